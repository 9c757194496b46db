/**
 * Copyright 2026 bosim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BOSIM_DISTRIBUTIONS_HPP
#define BOSIM_DISTRIBUTIONS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "fockspace.hpp"
#include "rng.hpp"

namespace bosim {

/** @brief Classical benchmark input: coherent amplitudes or thermal occupations. */
struct ClassicalModelSpec {
    enum class Kind { Coherent, Thermal };

    Kind kind = Kind::Coherent;
    std::vector<Complex> alpha;        // per-mode coherent amplitudes
    std::vector<double> mean_photons;  // per-mode thermal occupations

    static ClassicalModelSpec coherent(std::vector<Complex> amplitudes) {
        ClassicalModelSpec s;
        s.kind = Kind::Coherent;
        s.alpha = std::move(amplitudes);
        for (const Complex& a : s.alpha)
            require(std::isfinite(a.real()) && std::isfinite(a.imag()),
                    "ClassicalModelSpec: non-finite coherent amplitude");
        return s;
    }

    static ClassicalModelSpec thermal(std::vector<double> occupations) {
        ClassicalModelSpec s;
        s.kind = Kind::Thermal;
        s.mean_photons = std::move(occupations);
        for (double v : s.mean_photons)
            require(std::isfinite(v) && v >= 0.0,
                    "ClassicalModelSpec: thermal occupation must be finite and >= 0");
        return s;
    }
};

/**
@brief An explicit finite distribution over detection patterns.

Holds the enumerated pattern list, matching weights, the domain tag, and the
normalization constant (the probability mass divided out when the distribution
was conditioned on its domain; 1 for raw distributions).
*/
struct Distribution {
    std::vector<FockPattern> patterns;
    std::vector<double> probs;
    std::string domain_tag;
    double normalization = 1.0;
    bool normalized = false;

    void validate() const {
        require(patterns.size() == probs.size(), "Distribution: pattern/weight size mismatch");
        double mass = 0.0;
        for (double p : probs) {
            require(std::isfinite(p) && p >= 0.0,
                    "Distribution: weights must be finite and non-negative");
            mass += p;
        }
        require(mass <= 1.0 + 1e-9, "Distribution: total mass exceeds 1");
        if (normalized)
            require(std::abs(mass - 1.0) < 1e-12, "Distribution: normalized mass must equal 1");
        std::vector<const FockPattern*> seen;
        seen.reserve(patterns.size());
        for (const FockPattern& p : patterns) seen.push_back(&p);
        std::sort(seen.begin(), seen.end(),
                  [](const FockPattern* a, const FockPattern* b) { return *a < *b; });
        for (std::size_t i = 1; i < seen.size(); ++i)
            require(!(*seen[i - 1] == *seen[i]), "Distribution: duplicate pattern");
    }

    double total_mass() const {
        KahanSum s;
        for (double p : probs) s.add(p);
        return s.value();
    }

    /** @brief Conditions on the domain: divides by the mass and records it. */
    void normalize() {
        double mass = total_mass();
        require(mass > 0.0, "Distribution: cannot normalize an all-zero distribution");
        for (double& p : probs) p /= mass;
        normalization = mass;
        normalized = true;
    }
};

/** @brief Closed-form pattern counts per domain (no enumeration, no size guard). */
inline double count_patterns(const PatternDomain& dom) {
    const int m = static_cast<int>(dom.modes);
    switch (dom.kind) {
        case PatternDomain::Kind::CollisionFree: return binomial(m, dom.n);
        case PatternDomain::Kind::FixedTotal: return binomial(m + dom.n - 1, dom.n);
        case PatternDomain::Kind::MaxOccupancy2: {
            double c = 0.0;
            for (int d = 0; 2 * d <= dom.n; ++d)
                c += binomial(m, d) * binomial(m - d, dom.n - 2 * d);
            return c;
        }
        case PatternDomain::Kind::TruncatedTotal: {
            double c = 0.0;
            for (int t = 0; t <= dom.n; ++t) c += binomial(m + t - 1, t);
            return c;
        }
    }
    return 0.0;
}

/**
@brief Exact output probability of Fock-input boson sampling through a (possibly
rectangular) transfer matrix T, rows indexed by input modes and columns by
output modes:  p = |Per(T_{j,k})|^2 / (prod j! prod k!),  where rows are
repeated by the input occupations j and columns by the output occupations k.
*/
inline double prob_boson_sampling(const ComplexMatrix& t, const FockPattern& input,
                                  const FockPattern& output) {
    require(input.modes() == t.rows() && output.modes() == t.cols(),
            "prob_boson_sampling: pattern lengths must match the transfer matrix");
    require(input.total() == output.total(),
            "prob_boson_sampling: photon number mismatch between input and output");
    require(input.total() <= kPermanentCap, "prob_boson_sampling: photon number beyond cap");
    ComplexMatrix sub = repeat_submatrix(t, input, output);
    Complex per = permanent(sub);
    return std::norm(per) / (input.factorial_product() * output.factorial_product());
}

/**
@brief Exact Gaussian boson sampling probability of a detection pattern.

Pure squeezed-vacuum states use the hafnian law
  p(k) = |Haf(B_k)|^2 / (prod k_i! sqrt(det sigma_q)),
with B_k the kernel submatrix repeated by the pattern; odd photon totals have
exactly zero probability. States carrying loss (no pure kernel) are routed to
the Fock-space evaluator reconstructed from their stored source parameters.
*/
inline double prob_gbs(const GaussianState& state, const FockPattern& output) {
    require(output.modes() == state.m, "prob_gbs: pattern has the wrong mode count");
    if (state.has_kernel) {
        const int n = output.total();
        if (n % 2 != 0) return 0.0;
        require(n <= kHafnianCap, "prob_gbs: photon number beyond the hafnian cap");
        if (n == 0) return 1.0 / std::sqrt(state.det_sigma_q());
        ComplexMatrix sub =
            repeat_submatrix(state.kernel_b, output, output);
        Complex haf = hafnian(sub);
        return std::norm(haf) / (output.factorial_product() * std::sqrt(state.det_sigma_q()));
    }
    require(state.has_interf,
            "prob_gbs: lossy state lacks the source description needed by the Fock evaluator");
    MixedStateEvaluator ev(state.interf, SqueezerBank(state.xi), state.eta, output.total());
    return ev.probability(output);
}

/**
@brief Probability law of a Gaussian state as a reusable function; lossy states
share one Fock evaluator across calls so per-photon-sector work is cached.
*/
inline std::function<double(const FockPattern&)> gbs_law(const GaussianState& state,
                                                         int max_total) {
    if (state.has_kernel) {
        return [state](const FockPattern& k) { return prob_gbs(state, k); };
    }
    require(state.has_interf,
            "gbs_law: lossy state lacks the source description needed by the Fock evaluator");
    auto ev = std::make_shared<MixedStateEvaluator>(state.interf, SqueezerBank(state.xi),
                                                    state.eta, max_total);
    return [ev](const FockPattern& k) { return ev->probability(k); };
}

/**
@brief Coherent-light benchmark: amplitudes propagate linearly (beta = U^T alpha
in the row-equals-input convention) and each mode detects an independent
Poisson variable, p = prod_i e^{-|beta_i|^2} |beta_i|^{2 k_i} / k_i!.
*/
inline double prob_coherent(const ClassicalModelSpec& spec, const Interferometer& interf,
                            const FockPattern& output) {
    require(spec.kind == ClassicalModelSpec::Kind::Coherent, "prob_coherent: wrong model kind");
    const std::size_t m = interf.m();
    require(spec.alpha.size() == m && output.modes() == m,
            "prob_coherent: amplitude/pattern lengths must match the device");
    double p = 1.0;
    for (std::size_t q = 0; q < m; ++q) {
        Complex beta(0.0, 0.0);
        for (std::size_t r = 0; r < m; ++r) beta += spec.alpha[r] * interf.unitary(r, q);
        double mu = std::norm(beta);
        p *= std::exp(-mu) * std::pow(mu, output[q]) / factorial(output[q]);
    }
    return p;
}

/**
@brief Thermal-light benchmark via the permanent of the Hermitian correlation
matrix A = U^T diag(tau) conj(U), tau_i = <n_i>/(<n_i>+1):
  p(k) = Per(A_k) / (prod k_i! prod_i (1 + <n_i>)).
*/
inline double prob_thermal(const ClassicalModelSpec& spec, const Interferometer& interf,
                           const FockPattern& output) {
    require(spec.kind == ClassicalModelSpec::Kind::Thermal, "prob_thermal: wrong model kind");
    const std::size_t m = interf.m();
    require(spec.mean_photons.size() == m && output.modes() == m,
            "prob_thermal: occupation/pattern lengths must match the device");
    require(output.total() <= kPermanentCap, "prob_thermal: photon number beyond cap");
    ComplexMatrix d(m, m);
    double denom = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        d(i, i) = spec.mean_photons[i] / (spec.mean_photons[i] + 1.0);
        denom *= 1.0 + spec.mean_photons[i];
    }
    ComplexMatrix a = interf.unitary.transpose() * d * interf.unitary.conjugate();
    ComplexMatrix sub = repeat_submatrix(a, output, output);
    double per = permanent(sub).real();  // Hermitian PSD: imaginary part is rounding noise
    return std::max(per, 0.0) / (output.factorial_product() * denom);
}

/**
@brief Four-photon output law for distinguishable single-mode squeezed sources.

Each source i feeds one input mode and carries its own kernel
C_i = U^T diag(one-hot tanh xi_i) U; sources add probabilities, not
amplitudes. For a four-photon pattern k (at most two photons per mode) the
total splits into single-source four-photon hafnian terms and two-source
2+2 terms summed over every way of drawing an unordered photon pair from k:

  p(k) = prod_f sech(xi_f) * [ sum_i |Haf (C_i)_k|^2 / prod k_l!
         + sum_{i<j} sum_{pairs h of k} (|C_i[h]|^2/h!) (|C_j[k-h]|^2/(k-h)!) ],

where C_i[h] is the kernel entry picked by the two photon positions of h and
the factorial denominators carry the collision (double-occupancy) factors.
*/
inline double prob_distinguishable_sms(const SqueezerBank& banks, const Interferometer& interf,
                                       const FockPattern& output) {
    interf.validate();
    const std::size_t m = interf.m();
    const std::size_t ns = interf.input_modes.size();
    require(banks.size() == ns, "prob_distinguishable_sms: one squeezer per source required");
    require(output.modes() == m, "prob_distinguishable_sms: pattern has the wrong mode count");
    require(output.total() == 4, "prob_distinguishable_sms: only the four-photon law is defined");
    require(output.max_occupancy() <= 2,
            "prob_distinguishable_sms: more than two photons per mode is undefined");

    // Per-source kernels and the joint vacuum factor prod_f sech(xi_f).
    std::vector<ComplexMatrix> kernels;
    double vac = 1.0;
    for (std::size_t s = 0; s < ns; ++s) {
        ComplexMatrix d(m, m);
        d(interf.input_modes[s], interf.input_modes[s]) = std::tanh(banks.xi[s]);
        kernels.push_back(interf.unitary.transpose() * d * interf.unitary);
        vac /= std::cosh(banks.xi[s]);
    }

    // Two-photon submultisets of the output pattern: positions x <= y.
    struct Pair {
        std::size_t x, y;
    };
    std::vector<Pair> pairs;
    for (std::size_t x = 0; x < m; ++x) {
        if (output[x] == 0) continue;
        if (output[x] >= 2) pairs.push_back({x, x});
        for (std::size_t y = x + 1; y < m; ++y)
            if (output[y] >= 1) pairs.push_back({x, y});
    }

    auto two_photon_weight = [&](std::size_t src, const Pair& h) {
        double fact = (h.x == h.y) ? 2.0 : 1.0;  // collision factor of the removed pair
        return std::norm(kernels[src](h.x, h.y)) / fact;
    };
    auto complement = [&](const Pair& h) {
        std::vector<int> rest = output.occupations();
        rest[h.x] -= 1;
        rest[h.y] -= 1;
        Pair g{0, 0};
        bool first = true;
        for (std::size_t i = 0; i < m; ++i)
            while (rest[i] > 0) {
                if (first) {
                    g.x = i;
                    first = false;
                } else {
                    g.y = i;
                }
                rest[i] -= 1;
            }
        return g;
    };

    double acc = 0.0;
    for (std::size_t i = 0; i < ns; ++i) {
        ComplexMatrix sub =
            repeat_submatrix(kernels[i], output, output);
        acc += std::norm(hafnian(sub)) / output.factorial_product();
    }
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = i + 1; j < ns; ++j)
            for (const Pair& h : pairs) acc += two_photon_weight(i, h) * two_photon_weight(j, complement(h));
    return vac * acc;
}

/**
@brief Output law of two-mode-squeezed sources simulated on a doubled circuit.

The k sources feed a 2k x 2m device (two copies of the transfer matrix joined
by per-pair phase shifters and balanced beam splitters); the physical pattern x
is observed whenever the doubled circuit emits any split h + g = x with half
the photons in each copy:  p(x) = sum_{h+g=x, |h|=|g|} p_gbs(h, g).
*/
inline double prob_tms(const SqueezerBank& banks, const ComplexMatrix& transfer,
                       const FockPattern& output) {
    const std::size_t k = transfer.rows();
    const std::size_t m = transfer.cols();
    require(banks.size() == k, "prob_tms: one squeezer per source pair required");
    require(output.modes() == m, "prob_tms: pattern has the wrong mode count");
    const int n = output.total();
    if (n % 2 != 0) return 0.0;
    require(n <= kHafnianCap, "prob_tms: photon number beyond the hafnian cap");

    ComplexMatrix doubled = doubled_gbs_circuit(transfer);
    std::vector<double> xi2(2 * k);
    for (std::size_t j = 0; j < k; ++j) xi2[j] = xi2[k + j] = banks.xi[j];
    ComplexMatrix d(2 * k, 2 * k);
    for (std::size_t j = 0; j < 2 * k; ++j) d(j, j) = std::tanh(xi2[j]);
    ComplexMatrix kernel = doubled.transpose() * d * doubled;
    double sqrt_det = 1.0;
    for (std::size_t j = 0; j < k; ++j) sqrt_det *= std::cosh(banks.xi[j]) * std::cosh(banks.xi[j]);

    // Enumerate splits h + g = x with |h| = n/2 via a per-mode odometer.
    std::vector<int> h(m, 0);
    double total = 0.0;
    while (true) {
        int sum_h = 0;
        for (std::size_t i = 0; i < m; ++i) sum_h += h[i];
        if (sum_h == n / 2) {
            std::vector<int> occ2(2 * m);
            for (std::size_t i = 0; i < m; ++i) {
                occ2[i] = h[i];
                occ2[m + i] = output[i] - h[i];
            }
            FockPattern split(occ2);
            ComplexMatrix sub = repeat_submatrix(kernel, FockPattern(occ2), FockPattern(occ2));
            total += std::norm(hafnian(sub)) / (split.factorial_product() * sqrt_det);
        }
        std::size_t pos = 0;
        while (pos < m && h[pos] == output[pos]) {
            h[pos] = 0;
            ++pos;
        }
        if (pos == m) break;
        h[pos] += 1;
    }
    return total;
}

/** @brief Uniform ("maximally ignorant") benchmark: 1 / number of domain patterns. */
inline double prob_uniform(const PatternDomain& dom) {
    double c = count_patterns(dom);
    require(c > 0.0, "prob_uniform: empty pattern domain");
    return 1.0 / c;
}

/**
@brief Evaluates a probability law over an enumerated domain, optionally
conditioning on it. Evaluation is split across BOSIM_THREADS workers with a
deterministic assembly order (each worker fills preassigned slots).
*/
inline Distribution build_distribution(const std::function<double(const FockPattern&)>& law,
                                       const PatternDomain& dom, bool normalize_result = false) {
    Distribution dist;
    dist.patterns = enumerate_patterns(dom);
    dist.domain_tag = dom.tag();
    dist.probs.assign(dist.patterns.size(), 0.0);

    const int workers = std::min<int>(thread_count(), 256);
    if (workers <= 1 || dist.patterns.size() < 64) {
        for (std::size_t i = 0; i < dist.patterns.size(); ++i)
            dist.probs[i] = law(dist.patterns[i]);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex mu;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                try {
                    for (std::size_t i = static_cast<std::size_t>(w); i < dist.patterns.size();
                         i += static_cast<std::size_t>(workers))
                        dist.probs[i] = law(dist.patterns[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    if (normalize_result) dist.normalize();
    dist.validate();
    return dist;
}

/**
@brief Inverse-CDF sampling from an enumerated distribution; the draw sequence
is a pure function of the seed. Unnormalized mass is conditioned on implicitly.
*/
inline std::vector<FockPattern> sample(const Distribution& dist, std::uint64_t seed,
                                       std::size_t count) {
    require(!dist.patterns.empty(), "sample: empty distribution");
    std::vector<double> cdf(dist.probs.size());
    KahanSum acc;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        acc.add(dist.probs[i]);
        cdf[i] = acc.value();
    }
    const double mass = cdf.back();
    require(mass > 0.0, "sample: all-zero distribution");

    Rng rng(seed);
    std::vector<FockPattern> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        double u = rng.uniform01() * mass;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(std::distance(cdf.begin(), it));
        if (idx >= dist.patterns.size()) idx = dist.patterns.size() - 1;
        out.push_back(dist.patterns[idx]);
    }
    return out;
}

/**
@brief Detection channel of a pseudo-number-resolving detector built from a
balanced splitter and two click detectors: every doubly occupied mode resolves
"2" with probability 1/2 and collapses to a single click otherwise. Total
probability is preserved; photon totals can drop below the input's.
*/
inline Distribution pseudo_pnr_channel(const Distribution& dist) {
    std::map<std::vector<int>, double> acc;
    for (std::size_t i = 0; i < dist.patterns.size(); ++i) {
        const FockPattern& k = dist.patterns[i];
        require(k.max_occupancy() <= 2,
                "pseudo_pnr_channel: occupations above 2 are not resolvable");
        std::vector<std::size_t> doubles;
        for (std::size_t mdx = 0; mdx < k.modes(); ++mdx)
            if (k[mdx] == 2) doubles.push_back(mdx);
        const std::size_t d = doubles.size();
        const double share = dist.probs[i] / static_cast<double>(1ULL << d);
        for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
            std::vector<int> occ = k.occupations();
            for (std::size_t b = 0; b < d; ++b)
                if (mask & (1ULL << b)) occ[doubles[b]] = 1;  // collapsed to one click
            acc[occ] += share;
        }
    }
    Distribution out;
    out.domain_tag = "pseudo-pnr(" + dist.domain_tag + ")";
    out.normalization = dist.normalization;
    out.normalized = dist.normalized;
    for (const auto& kv : acc) {
        out.patterns.push_back(FockPattern(kv.first));
        out.probs.push_back(kv.second);
    }
    return out;
}

/**
@brief Heralding law of a scattershot bank: probability that exactly n of the k
two-mode-squeezed sources fire one pair each, with per-source firing
probability eps = tanh^2(xi):  C(k, n) eps^n (1 - eps)^(k - n).
*/
inline double sbs_herald_probability(int sources, int fired, double eps) {
    require(sources >= 0 && fired >= 0 && fired <= sources,
            "sbs_herald_probability: need 0 <= fired <= sources");
    require(std::isfinite(eps) && eps >= 0.0 && eps <= 1.0,
            "sbs_herald_probability: eps must lie in [0, 1]");
    return binomial(sources, fired) * std::pow(eps, fired) *
           std::pow(1.0 - eps, sources - fired);
}

/**
@brief Rate enhancement of scattershot heralding over n dedicated sources that
must all fire:  C(k, n) (1 - eps)^(k - n), approaching C(k, n) as eps -> 0.
*/
inline double sbs_enhancement_ratio(int sources, int fired, double eps) {
    require(sources >= 0 && fired >= 0 && fired <= sources,
            "sbs_enhancement_ratio: need 0 <= fired <= sources");
    require(std::isfinite(eps) && eps >= 0.0 && eps < 1.0,
            "sbs_enhancement_ratio: eps must lie in [0, 1)");
    return binomial(sources, fired) * std::pow(1.0 - eps, sources - fired);
}

/** @brief Pair-number law of one two-mode squeezer: geometric (1 - t) t^j, t = tanh^2(xi). */
inline double tms_pair_probability(double xi, int pairs) {
    require(pairs >= 0, "tms_pair_probability: negative pair count");
    double t = std::tanh(xi) * std::tanh(xi);
    return (1.0 - t) * std::pow(t, pairs);
}

/**
@brief Pushes a lossless photon-number law through uniform transmission eta on
every mode. Uniform loss commutes with a passive interferometer, so each
lossless pattern thins independently, mode by mode:

    p_lossy(k) = sum_{k' >= k} p(k') prod_i C(k'_i, k_i) eta^{k_i} (1 - eta)^{k'_i - k_i}.

The sum runs over the patterns present in `lossless` (typically a law built on
a truncated-total domain; mass beyond the truncation is absent, so results are
lower bounds that converge as the truncation grows). Returns the lossy
probabilities of `outputs` in order. At eta = 1 the map is the identity; at
eta = 0 all mass lands on the all-zero pattern.
*/
inline std::vector<double> lossy_sector_probabilities(const Distribution& lossless,
                                                      double eta,
                                                      const std::vector<FockPattern>& outputs) {
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
            "lossy_sector_probabilities: transmission must lie in [0, 1]");
    std::map<std::vector<int>, std::size_t> slot;
    std::set<int> target_totals;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        auto inserted = slot.emplace(outputs[i].occupations(), i);
        require(inserted.second, "lossy_sector_probabilities: duplicate output pattern");
        target_totals.insert(outputs[i].total());
    }
    std::vector<KahanSum> acc(outputs.size());
    std::vector<int> low;
    for (std::size_t i = 0; i < lossless.patterns.size(); ++i) {
        const double p = lossless.probs[i];
        if (p == 0.0) continue;
        const FockPattern& hi = lossless.patterns[i];
        const std::size_t modes = hi.modes();
        // Suffix capacities let the survivor walk prune branches that can no
        // longer reach the requested total.
        std::vector<int> cap(modes + 1, 0);
        for (std::size_t j = modes; j-- > 0;) cap[j] = cap[j + 1] + hi[j];
        low.assign(modes, 0);
        // Walks survivor patterns low <= hi with sum(low) == remaining target,
        // carrying the accumulated thinning weight.
        std::function<void(std::size_t, int, double)> walk = [&](std::size_t j, int remaining,
                                                                 double weight) {
            if (remaining > cap[j]) return;
            if (j == modes) {
                auto it = slot.find(low);
                if (it != slot.end()) acc[it->second].add(weight);
                return;
            }
            const int top = std::min(hi[j], remaining);
            for (int s = 0; s <= top; ++s) {
                low[j] = s;
                const double w = weight * binomial(hi[j], s) * std::pow(eta, s) *
                                 std::pow(1.0 - eta, hi[j] - s);
                if (w != 0.0) walk(j + 1, remaining - s, w);
            }
            low[j] = 0;
        };
        for (int target : target_totals) {
            if (target > hi.total()) continue;
            walk(0, target, p);
        }
    }
    std::vector<double> out(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) out[i] = acc[i].value();
    return out;
}

/**
@brief Classical (Bhattacharyya) fidelity sum_i sqrt(p_i q_i) between two
probability vectors over the same pattern list. Both inputs are normalized
first, so F(p, p) = 1 for any positive-mass p and disjoint supports give 0.
*/
inline double statistical_fidelity(const std::vector<double>& p, const std::vector<double>& q) {
    require(p.size() == q.size(), "statistical_fidelity: length mismatch");
    require(!p.empty(), "statistical_fidelity: empty vectors");
    KahanSum mp, mq;
    for (std::size_t i = 0; i < p.size(); ++i) {
        require(std::isfinite(p[i]) && p[i] >= 0.0 && std::isfinite(q[i]) && q[i] >= 0.0,
                "statistical_fidelity: entries must be finite and nonnegative");
        mp.add(p[i]);
        mq.add(q[i]);
    }
    require(mp.value() > 0.0 && mq.value() > 0.0,
            "statistical_fidelity: both vectors need positive mass");
    KahanSum f;
    for (std::size_t i = 0; i < p.size(); ++i)
        f.add(std::sqrt((p[i] / mp.value()) * (q[i] / mq.value())));
    return f.value();
}

}  // namespace bosim

#endif  // BOSIM_DISTRIBUTIONS_HPP
