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

#ifndef BOSIM_SCALING_HPP
#define BOSIM_SCALING_HPP

#include <algorithm>
#include <string>

#include "distributions.hpp"

namespace bosim {

/** @brief Sampling flavor used by the event-rate model. */
enum class RateProtocol { Sbs, Gbs };

/**
@brief Hardware parameters of the n-photon event-rate model: pump repetition
rate, detection / channel / per-coupling transmissions, source squeezing, and
system size (k sources feeding an m-mode interferometer). Defaults are the
characterised silicon-photonics values with spiral sources and off-chip
detection.
*/
struct RateParams {
    double r0 = 5.0e8;      // pump repetition rate (Hz)
    double eta_det = 0.8;   // detection efficiency
    double eta_ch = 0.64;   // interferometer-to-detector channel transmission
    double eta_u = 0.9995;  // transmission of one coupling operation in the interferometer
    double xi = 0.17;       // squeezing parameter of every source
    int k = 100;            // number of sources
    int m = 100;            // number of interferometer modes

    void validate() const {
        require(std::isfinite(r0) && r0 > 0.0, "RateParams: repetition rate must be positive");
        for (double eta : {eta_det, eta_ch, eta_u})
            require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
                    "RateParams: efficiencies must lie in [0, 1]");
        require(std::isfinite(xi), "RateParams: squeezing must be finite");
        require(k >= 1 && m >= 1, "RateParams: source and mode counts must be >= 1");
    }
};

/**
@brief Named parameter sets for the rate model. "spiral" and "ring" differ in
source squeezing (0.17 vs 0.31); the "-integrated" variants detect on chip, so
the off-chip channel loss disappears (eta_ch = 1). All use k = m = 100.
*/
inline RateParams rate_preset(const std::string& name) {
    RateParams p;
    if (name == "spiral") {
        p.xi = 0.17;
    } else if (name == "spiral-integrated") {
        p.xi = 0.17;
        p.eta_ch = 1.0;
    } else if (name == "ring") {
        p.xi = 0.31;
    } else if (name == "ring-integrated") {
        p.xi = 0.31;
        p.eta_ch = 1.0;
    } else {
        throw Error("rate_preset: unknown preset '" + name +
                    "' (expected spiral, spiral-integrated, ring, ring-integrated)");
    }
    return p;
}

namespace detail {

/**
@brief Accumulates exponent * log(base) into acc. Returns false when the power
is exactly zero (zero base with positive exponent), leaving acc untouched;
x^0 = 1 even at x = 0, so a zero exponent always succeeds.
*/
inline bool add_log_power(double& acc, double base, double exponent) {
    if (exponent == 0.0) return true;
    if (base == 0.0) return false;
    acc += exponent * std::log(base);
    return true;
}

}  // namespace detail

/**
@brief Event rate (Hz) for n detected signal photons from k sources in an
m-mode interferometer, evaluated in log space so k = m = 1000 stays finite:

  R_sbs(n,k,m) = R0 C(k,n)           tanh^{2n} sech^{2k} eta_u^{mn} eta_ch^{2n} eta_det^{2n}
  R_gbs(n,k,m) = R0 C(k/2+n/2-1,n/2) tanh^{n}  sech^{k}  eta_u^{mn} eta_ch^{n}  eta_det^{n}

The scattershot row counts signal and herald arms (squared channel/detector
factors); the Gaussian row needs an even n (photons arrive in pairs) and
accepts odd k through the gamma-function binomial.
*/
inline double event_rate(RateProtocol protocol, int n, const RateParams& params) {
    params.validate();
    require(n >= 1, "event_rate: need at least one photon");
    require(n <= params.k, "event_rate: photon number cannot exceed source count");
    require(params.xi > 0.0, "event_rate: squeezing must be positive");
    const double th = std::tanh(params.xi);
    const double sech = 1.0 / std::cosh(params.xi);
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(params.k);
    const double mn = static_cast<double>(params.m) * nd;
    double lg = std::log(params.r0);
    bool nonzero = true;
    if (protocol == RateProtocol::Sbs) {
        lg += log_binomial_real(kd, nd);
        nonzero = nonzero && detail::add_log_power(lg, th, 2.0 * nd);
        nonzero = nonzero && detail::add_log_power(lg, sech, 2.0 * kd);
        nonzero = nonzero && detail::add_log_power(lg, params.eta_u, mn);
        nonzero = nonzero && detail::add_log_power(lg, params.eta_ch, 2.0 * nd);
        nonzero = nonzero && detail::add_log_power(lg, params.eta_det, 2.0 * nd);
    } else {
        require(n % 2 == 0, "event_rate: the Gaussian protocol emits photon pairs; n must be even");
        lg += log_binomial_real(0.5 * kd + 0.5 * nd - 1.0, 0.5 * nd);
        nonzero = nonzero && detail::add_log_power(lg, th, nd);
        nonzero = nonzero && detail::add_log_power(lg, sech, kd);
        nonzero = nonzero && detail::add_log_power(lg, params.eta_u, mn);
        nonzero = nonzero && detail::add_log_power(lg, params.eta_ch, nd);
        nonzero = nonzero && detail::add_log_power(lg, params.eta_det, nd);
    }
    return nonzero ? std::exp(lg) : 0.0;
}

/**
@brief Probability that k single-mode squeezers with squeezing xi emit
`photons` photons in total (photons = 2n, n pairs): the negative-binomial law
C(k/2 + n - 1, n) sech^k(xi) tanh^{2n}(xi). Odd totals have probability zero.
*/
inline double sms_photon_number_probability(int photons, int sources, double xi) {
    require(photons >= 0, "sms_photon_number_probability: negative photon count");
    require(sources >= 1, "sms_photon_number_probability: need at least one source");
    require(std::isfinite(xi) && xi > 0.0, "sms_photon_number_probability: squeezing must be positive");
    if (photons % 2 != 0) return 0.0;
    const double n = 0.5 * photons;
    const double k = static_cast<double>(sources);
    double lg = log_binomial_real(0.5 * k + n - 1.0, n);
    lg += -k * std::log(std::cosh(xi));
    if (photons > 0) lg += 2.0 * n * std::log(std::tanh(xi));
    return std::exp(lg);
}

/**
@brief Probability that k two-mode squeezers with squeezing xi contribute n
pairs (n photons on the observed wavelength): C(k, n) sech^{2k}(xi)
tanh^{2n}(xi). Zero for n > k.
*/
inline double tms_pair_number_probability(int pairs, int sources, double xi) {
    require(pairs >= 0, "tms_pair_number_probability: negative pair count");
    require(sources >= 1, "tms_pair_number_probability: need at least one source");
    require(std::isfinite(xi) && xi > 0.0, "tms_pair_number_probability: squeezing must be positive");
    if (pairs > sources) return 0.0;
    double lg = log_binomial_real(static_cast<double>(sources), static_cast<double>(pairs));
    lg += -2.0 * sources * std::log(std::cosh(xi));
    if (pairs > 0) lg += 2.0 * pairs * std::log(std::tanh(xi));
    return std::exp(lg);
}

/**
@brief Signal-to-noise ratio between 2n-photon events generated purely by the
k degenerate (single-mode) squeezers and events contaminated by at least one
nondegenerate (two-mode) pair, closed form:

  SNR(2n,k,xi) = cosh^{4k}(xi) C(k/2+n-1, n)
                 / sum_{m=1}^{n} C(k/2+n-m-1, n-m) C(2k, 2m) tanh^{2m}(xi).

Evaluated with log-gamma binomials and a log-sum-exp denominator so large k
stays finite.
*/
inline double snr_gbs(int n_pairs, int sources, double xi) {
    require(n_pairs >= 1, "snr_gbs: need at least one photon pair");
    require(sources >= 1, "snr_gbs: need at least one source");
    require(std::isfinite(xi) && xi > 0.0, "snr_gbs: zero squeezing gives no signal");
    const double k = static_cast<double>(sources);
    const double log_tanh2 = 2.0 * std::log(std::tanh(xi));
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n_pairs));
    for (int m = 1; m <= n_pairs; ++m) {
        if (m > sources) break;  // C(2k, 2m) vanishes: no room for m extra pairs
        double t = log_binomial_real(0.5 * k + n_pairs - m - 1.0, static_cast<double>(n_pairs - m)) +
                   log_binomial_real(2.0 * k, 2.0 * m) + m * log_tanh2;
        terms.push_back(t);
    }
    const double peak = *std::max_element(terms.begin(), terms.end());
    KahanSum denom;
    for (double t : terms) denom.add(std::exp(t - peak));
    const double log_denominator = peak + std::log(denom.value());
    const double log_snr = 4.0 * k * std::log(std::cosh(xi)) +
                           log_binomial_real(0.5 * k + n_pairs - 1.0, static_cast<double>(n_pairs)) -
                           log_denominator;
    return std::exp(log_snr);
}

/**
@brief The same signal-to-noise ratio assembled from first principles: the
clean-event probability p_sms(2N) divided by the total contaminated-event
probability sum_{m=1}^{N} p_sms(2(N-m)) p_tms^{(2k)}(2m), where photons can
split between the k single-mode squeezers and the 2k spurious two-mode
squeezers of the same bank.
*/
inline double snr_gbs_composed(int n_pairs, int sources, double xi) {
    require(n_pairs >= 1, "snr_gbs_composed: need at least one photon pair");
    require(sources >= 1, "snr_gbs_composed: need at least one source");
    require(std::isfinite(xi) && xi > 0.0, "snr_gbs_composed: zero squeezing gives no signal");
    const double clean = sms_photon_number_probability(2 * n_pairs, sources, xi);
    KahanSum noise;
    for (int m = 1; m <= n_pairs; ++m) {
        noise.add(sms_photon_number_probability(2 * (n_pairs - m), sources, xi) *
                  tms_pair_number_probability(2 * m, 2 * sources, xi));
    }
    require(noise.value() > 0.0, "snr_gbs_composed: vanishing noise probability");
    return clean / noise.value();
}

/** @brief Smallest t with 2^t >= n (depth of a binary demultiplexing tree). */
inline int ceil_log2(int n) {
    require(n >= 1, "ceil_log2: argument must be >= 1");
    int t = 0;
    while ((1LL << t) < n) ++t;
    return t;
}

/**
@brief Event rate of standard boson sampling fed by one time-demultiplexed
quantum-dot source: R = r0_qd p_qd^n eta_switch^{n ceil(log2 n)} eta_u^{mn}
eta_ch^n eta_det^n. The switching tree routing n sequential photons to n
inputs has depth ceil(log2 n), so each photon crosses that many switches.
Only the interferometer and channel/detector fields of `params` are used; its
source fields (r0, xi, k) are replaced by the quantum-dot model.
*/
inline double qd_demux_rate(int n, const RateParams& params, double p_qd = 0.65,
                            double r0_qd = 7.6e7, double eta_switch = 0.995) {
    params.validate();
    require(n >= 1, "qd_demux_rate: need at least one photon");
    require(std::isfinite(p_qd) && p_qd > 0.0 && p_qd <= 1.0,
            "qd_demux_rate: generation probability must lie in (0, 1]");
    require(std::isfinite(r0_qd) && r0_qd > 0.0, "qd_demux_rate: repetition rate must be positive");
    require(std::isfinite(eta_switch) && eta_switch >= 0.0 && eta_switch <= 1.0,
            "qd_demux_rate: switch transmission must lie in [0, 1]");
    const double nd = static_cast<double>(n);
    double lg = std::log(r0_qd) + nd * std::log(p_qd);
    bool nonzero = true;
    nonzero = nonzero && detail::add_log_power(lg, eta_switch, nd * ceil_log2(n));
    nonzero = nonzero && detail::add_log_power(lg, params.eta_u, static_cast<double>(params.m) * nd);
    nonzero = nonzero && detail::add_log_power(lg, params.eta_ch, nd);
    nonzero = nonzero && detail::add_log_power(lg, params.eta_det, nd);
    return nonzero ? std::exp(lg) : 0.0;
}

/** @brief Result of a circuit-size sweep: the maximizing k = m and its rate. */
struct OptimalSize {
    int k_star = 0;
    double rate_star = 0.0;
};

/**
@brief Sweeps the system size k = m over [k_lo, k_hi] (k_lo defaults to n) and
returns the size maximizing the event rate. Interferometer loss eta_u^{mn}
shrinks with size while the combinatorial generation term grows, so an
interior optimum appears whenever eta_u < 1; ties keep the smallest size.
*/
inline OptimalSize optimal_circuit_size(RateProtocol protocol, int n, const RateParams& base,
                                        int k_lo = -1, int k_hi = 1000) {
    base.validate();
    require(n >= 1, "optimal_circuit_size: need at least one photon");
    if (k_lo < 0) k_lo = n;
    require(k_lo >= n, "optimal_circuit_size: sweep must start at k >= n");
    require(k_hi >= k_lo, "optimal_circuit_size: empty sweep");
    OptimalSize best;
    best.rate_star = -1.0;
    for (int kk = k_lo; kk <= k_hi; ++kk) {
        RateParams p = base;
        p.k = kk;
        p.m = kk;
        const double rate = event_rate(protocol, n, p);
        if (rate > best.rate_star) {
            best.rate_star = rate;
            best.k_star = kk;
        }
    }
    return best;
}

/**
@brief Largest photon number whose size-optimized event rate still clears the
practicality threshold (default one event per week). Scans n upward (even n
only for the Gaussian protocol) until `n_cap`, optimizing k = m in [n, k_hi]
at every step; returns 0 when even the smallest n misses the threshold.
*/
inline int largest_practical_n(RateProtocol protocol, const RateParams& base,
                               double threshold_hz = 1.0 / 604800.0, int n_cap = 200,
                               int k_hi = 1000) {
    base.validate();
    require(std::isfinite(threshold_hz) && threshold_hz > 0.0,
            "largest_practical_n: threshold must be positive");
    require(n_cap >= 1, "largest_practical_n: empty photon range");
    const int step = (protocol == RateProtocol::Gbs) ? 2 : 1;
    const int start = (protocol == RateProtocol::Gbs) ? 2 : 1;
    int best = 0;
    for (int n = start; n <= n_cap; n += step) {
        const OptimalSize opt = optimal_circuit_size(protocol, n, base, n, k_hi);
        if (opt.rate_star >= threshold_hz) best = n;
    }
    return best;
}

/** @brief One grid point of the loss study: squeezing, transmission, mean fidelity. */
struct LossFidelityRow {
    double xi = 0.0;
    double eta = 0.0;
    double mean_fidelity = 0.0;
};

/**
@brief Effect of uniform photon loss before the interferometer on the n-photon
output sector. For every seeded Haar circuit and squeezing value the lossless
law is built on a truncated-total domain (totals up to n + 2*extra_pairs);
each transmission eta then yields the lossy n-photon sector by per-mode
binomial thinning, which is exactly the distribution of the lossy Gaussian
state because uniform loss commutes with the interferometer (loss on unused
vacuum inputs is a no-op). The lossy covariance itself is still constructed
through the ancilla-beamsplitter route and validated at every grid point.
Reported fidelities are Bhattacharyya overlaps between the renormalized lossy
and lossless sectors, averaged over circuits; rows follow grid order (xi
outer, eta inner).
*/
inline std::vector<LossFidelityRow> loss_fidelity_study(
        int n, std::size_t m, std::size_t sources, const std::vector<double>& xi_grid,
        const std::vector<double>& eta_grid, int circuits, std::uint64_t seed,
        int extra_pairs = 2) {
    require(n == 4 || n == 6, "loss_fidelity_study: supported output sectors are n = 4 and n = 6");
    require(m >= 2, "loss_fidelity_study: need at least two modes");
    require(sources >= 1 && sources <= m,
            "loss_fidelity_study: source count must lie in [1, modes]");
    require(!xi_grid.empty() && !eta_grid.empty(), "loss_fidelity_study: empty grid");
    require(circuits >= 1, "loss_fidelity_study: need at least one circuit");
    require(extra_pairs >= 0, "loss_fidelity_study: negative truncation margin");
    const int max_total = n + 2 * extra_pairs;
    require(max_total <= kHafnianCap,
            "loss_fidelity_study: truncation exceeds the hafnian size cap; lower extra_pairs");
    for (double xi : xi_grid)
        require(std::isfinite(xi) && xi > 0.0, "loss_fidelity_study: squeezing must be positive");
    for (double eta : eta_grid)
        require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
                "loss_fidelity_study: transmission must lie in [0, 1]");

    const PatternDomain sector_dom = PatternDomain::fixed_total(m, n);
    const std::vector<FockPattern> sector = enumerate_patterns(sector_dom);
    const PatternDomain full_dom = PatternDomain::truncated_total(m, max_total);

    std::vector<KahanSum> fid_acc(xi_grid.size() * eta_grid.size());
    for (int c = 0; c < circuits; ++c) {
        Interferometer interf;
        interf.unitary = haar_random_unitary(m, seed + static_cast<std::uint64_t>(c));
        interf.input_modes.resize(sources);
        for (std::size_t i = 0; i < sources; ++i) interf.input_modes[i] = i;
        for (std::size_t xi_idx = 0; xi_idx < xi_grid.size(); ++xi_idx) {
            std::vector<double> xi_full(m, 0.0);
            for (std::size_t i = 0; i < sources; ++i) xi_full[i] = xi_grid[xi_idx];
            SqueezerBank bank(xi_full);
            const GaussianState pure = build_sigma_q(interf, bank);
            const Distribution lossless =
                build_distribution(gbs_law(pure, max_total), full_dom, /*normalize=*/false);
            std::map<std::vector<int>, double> lossless_by_pattern;
            for (std::size_t i = 0; i < lossless.patterns.size(); ++i)
                if (lossless.patterns[i].total() == n)
                    lossless_by_pattern[lossless.patterns[i].occupations()] = lossless.probs[i];
            std::vector<double> ideal(sector.size());
            for (std::size_t i = 0; i < sector.size(); ++i)
                ideal[i] = lossless_by_pattern.at(sector[i].occupations());
            for (std::size_t eta_idx = 0; eta_idx < eta_grid.size(); ++eta_idx) {
                const double eta = eta_grid[eta_idx];
                const GaussianState lossy = apply_uniform_loss(bank, interf, LossChannel(eta));
                lossy.validate();
                const std::vector<double> lossy_sector =
                    lossy_sector_probabilities(lossless, eta, sector);
                fid_acc[xi_idx * eta_grid.size() + eta_idx].add(
                    statistical_fidelity(lossy_sector, ideal));
            }
        }
    }

    std::vector<LossFidelityRow> rows;
    rows.reserve(fid_acc.size());
    for (std::size_t xi_idx = 0; xi_idx < xi_grid.size(); ++xi_idx) {
        for (std::size_t eta_idx = 0; eta_idx < eta_grid.size(); ++eta_idx) {
            LossFidelityRow row;
            row.xi = xi_grid[xi_idx];
            row.eta = eta_grid[eta_idx];
            row.mean_fidelity =
                fid_acc[xi_idx * eta_grid.size() + eta_idx].value() / circuits;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace bosim

#endif  // BOSIM_SCALING_HPP
