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

#ifndef BOSIM_VIBRONIC_HPP
#define BOSIM_VIBRONIC_HPP

#include <limits>
#include <numeric>

#include "distributions.hpp"

namespace bosim {

/**
@brief Harmonic two-state molecule: initial/final normal-mode frequencies, the
Duschinsky rotation between their normal coordinates, and the displacement.
*/
struct MoleculeSpec {
    std::vector<double> omega;        // initial-state frequencies, > 0
    std::vector<double> omega_prime;  // final-state frequencies, > 0
    ComplexMatrix duschinsky;         // real orthogonal rotation
    std::vector<double> displacement;

    std::size_t modes() const { return omega.size(); }

    void validate() const {
        const std::size_t m = omega.size();
        require(m >= 1, "MoleculeSpec: need at least one mode");
        require(omega_prime.size() == m && displacement.size() == m &&
                    duschinsky.rows() == m && duschinsky.cols() == m,
                "MoleculeSpec: field sizes must agree");
        for (std::size_t i = 0; i < m; ++i)
            require(omega[i] > 0.0 && omega_prime[i] > 0.0,
                    "MoleculeSpec: frequencies must be strictly positive");
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                require(std::abs(duschinsky(r, c).imag()) < 1e-12,
                        "MoleculeSpec: rotation matrix must be real");
        require(duschinsky.is_unitary(1e-10), "MoleculeSpec: rotation matrix must be orthogonal");
    }
};

/**
@brief Optical decomposition of the molecular transformation: left/right
unitaries, per-mode squeezing (log-singular values, sign included), and the
displacement amplitudes. The intermediate frequency-weighted rotation J is kept
for reconstruction checks and displacement inversion.
*/
struct DoktorovDecomposition {
    ComplexMatrix u_left;
    ComplexMatrix u_right;
    std::vector<double> xi;
    std::vector<double> alpha;
    ComplexMatrix j_matrix;

    std::size_t modes() const { return xi.size(); }

    void validate() const {
        const std::size_t m = xi.size();
        require(m >= 1 && alpha.size() == m && u_left.rows() == m && u_left.cols() == m &&
                    u_right.rows() == m && u_right.cols() == m && j_matrix.rows() == m,
                "DoktorovDecomposition: field sizes must agree");
        require(u_left.is_unitary(1e-10) && u_right.is_unitary(1e-10),
                "DoktorovDecomposition: factors must be unitary");
        ComplexMatrix sigma(m, m);
        for (std::size_t i = 0; i < m; ++i) sigma(i, i) = std::exp(xi[i]);
        ComplexMatrix rebuilt = u_left * sigma * u_right.transpose();
        require(rebuilt.max_abs_diff(j_matrix) < 1e-9,
                "DoktorovDecomposition: factors fail to reconstruct J");
    }
};

/**
@brief Builds the optical decomposition of a molecule.

J = diag(sqrt(omega')) U_D diag(sqrt(omega))^-1 is factorised by singular value
decomposition J = U_L Sigma U_R^T; squeezing parameters are the natural logs of
the singular values (negative values are legitimate), and the displacement
amplitudes follow from alpha = J^-1 (diag(sqrt(omega')) d) / sqrt(2). For a
displacement-free molecule alpha is exactly zero and no inversion is attempted.
*/
inline DoktorovDecomposition doktorov_decompose(const MoleculeSpec& mol) {
    mol.validate();
    const std::size_t m = mol.modes();
    ComplexMatrix j(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            j(r, c) = std::sqrt(mol.omega_prime[r]) * mol.duschinsky(r, c) /
                      std::sqrt(mol.omega[c]);

    SvdResult svd_j = svd(j);
    DoktorovDecomposition dok;
    dok.u_left = svd_j.u;
    dok.u_right = svd_j.v;
    dok.j_matrix = j;
    for (double s : svd_j.singular_values) {
        require(s > 0.0, "doktorov_decompose: singular transformation matrix");
        dok.xi.push_back(std::log(s));
    }

    bool displaced = false;
    for (double d : mol.displacement)
        if (d != 0.0) displaced = true;
    if (!displaced) {
        dok.alpha.assign(m, 0.0);
    } else {
        ComplexMatrix delta(m, 1);
        for (std::size_t i = 0; i < m; ++i)
            delta(i, 0) = std::sqrt(mol.omega_prime[i]) * mol.displacement[i];
        ComplexMatrix sol = inverse(j) * delta;
        for (std::size_t i = 0; i < m; ++i) {
            require(std::abs(sol(i, 0).imag()) < 1e-9,
                    "doktorov_decompose: displacement amplitudes must be real");
            dok.alpha.push_back(sol(i, 0).real() / std::sqrt(2.0));
        }
    }
    return dok;
}

/**
@brief Gaussian state whose photon statistics are the molecule's FC factors:
squeezers xi followed by the left Doktorov unitary. The left unitary acts as
the mode map (row = output); it is stored transposed because interferometers
in this library keep row = input.
*/
inline GaussianState fc_state(const DoktorovDecomposition& dok) {
    for (double a : dok.alpha)
        require(a == 0.0, "fc_state: displaced molecules are out of scope");
    Interferometer interf;
    interf.unitary = dok.u_left.transpose();
    interf.input_modes.resize(dok.modes());
    std::iota(interf.input_modes.begin(), interf.input_modes.end(), 0);
    return build_sigma_q(interf, SqueezerBank(dok.xi));
}

/**
@brief Franck-Condon factor of one vibrational pattern, by direct delegation to
the Gaussian probability law on the decomposition's optical circuit.
*/
inline double fc_factor(const DoktorovDecomposition& dok, const FockPattern& pattern) {
    return prob_gbs(fc_state(dok), pattern);
}

/** @brief Frequency-binned Franck-Condon profile with its truncation record. */
struct FcProfile {
    std::vector<double> frequencies;  // ascending bin centers
    std::vector<double> masses;
    int truncation_n = 0;

    void validate() const {
        require(frequencies.size() == masses.size(), "FcProfile: bin/mass size mismatch");
        double total = 0.0;
        for (double v : masses) {
            require(std::isfinite(v) && v >= 0.0, "FcProfile: masses must be non-negative");
            total += v;
        }
        require(total <= 1.0 + 1e-9, "FcProfile: total mass exceeds 1");
        for (std::size_t i = 1; i < frequencies.size(); ++i)
            require(frequencies[i] > frequencies[i - 1], "FcProfile: bins must be ascending");
    }

    double total_mass() const {
        KahanSum s;
        for (double v : masses) s.add(v);
        return s.value();
    }
};

/** @brief Binning rule for FC profiles. */
enum class ProfileBinning {
    Auto,  // common divisor of rounded single-photon energies, exact fallback
    Exact  // cluster identical energies within a relative 1e-9 gap
};

/**
@brief Accumulates FC factors of all patterns with total <= truncation_n into
energy bins at omega = sum_i omega'_i k_i.

Auto binning uses the greatest common divisor of the rounded single-photon
energies as the bin width; when any frequency rounds to zero it falls back to
exact-match clustering of the computed energies.
*/
inline FcProfile fc_profile(const DoktorovDecomposition& dok,
                            const std::vector<double>& omega_prime, int truncation_n,
                            ProfileBinning binning = ProfileBinning::Auto) {
    const std::size_t m = dok.modes();
    require(omega_prime.size() == m, "fc_profile: one frequency per mode required");
    require(truncation_n >= 0 && truncation_n <= kHafnianCap,
            "fc_profile: truncation must stay within the hafnian cap");

    GaussianState state = fc_state(dok);
    std::vector<FockPattern> patterns =
        enumerate_patterns(PatternDomain::truncated_total(m, truncation_n));

    std::vector<std::pair<double, double>> events;  // (energy, mass)
    for (const FockPattern& k : patterns) {
        double p = prob_gbs(state, k);
        if (p == 0.0) continue;
        double energy = 0.0;
        for (std::size_t i = 0; i < m; ++i) energy += omega_prime[i] * k[i];
        events.push_back({energy, p});
    }

    long long width = 0;
    if (binning == ProfileBinning::Auto) {
        for (double w : omega_prime) {
            long long r = std::llround(w);
            if (r <= 0) {
                width = 0;  // degenerate rounding: fall back to exact clustering
                break;
            }
            width = std::gcd(width, r);
        }
    }

    std::map<long long, double> bins;
    FcProfile profile;
    profile.truncation_n = truncation_n;
    if (width > 0) {
        for (const auto& ev : events)
            bins[std::llround(ev.first / static_cast<double>(width))] += ev.second;
        for (const auto& kv : bins) {
            profile.frequencies.push_back(static_cast<double>(kv.first * width));
            profile.masses.push_back(kv.second);
        }
    } else {
        std::sort(events.begin(), events.end());
        for (const auto& ev : events) {
            if (!profile.frequencies.empty() &&
                ev.first - profile.frequencies.back() <= 1e-9 * (1.0 + std::abs(ev.first))) {
                profile.masses.back() += ev.second;
            } else {
                profile.frequencies.push_back(ev.first);
                profile.masses.push_back(ev.second);
            }
        }
    }
    profile.validate();
    return profile;
}

/** @brief The optimal classical baseline on a given grid: all mass in the zero-energy bin. */
inline FcProfile vacuum_profile(const FcProfile& grid) {
    FcProfile out;
    out.frequencies = grid.frequencies;
    out.masses.assign(grid.frequencies.size(), 0.0);
    out.truncation_n = 0;
    bool placed = false;
    for (std::size_t i = 0; i < out.frequencies.size(); ++i)
        if (std::abs(out.frequencies[i]) < 1e-9) {
            out.masses[i] = 1.0;
            placed = true;
        }
    require(placed, "vacuum_profile: grid has no zero-energy bin");
    return out;
}

/**
@brief Inverts the device response on a measured pattern list: each weight is
divided by eta^n gamma^(2n) (n photons detected) and the list is renormalized,
recovering the ideal distribution the device rescaled.
*/
inline Distribution postprocess_rescale(const Distribution& raw, double eta, double gamma) {
    require(std::isfinite(eta) && eta > 0.0 && eta <= 1.0,
            "postprocess_rescale: transmission must lie in (0, 1]");
    require(std::isfinite(gamma) && gamma > 0.0, "postprocess_rescale: gamma must be positive");
    Distribution out = raw;
    double mass = 0.0;
    for (std::size_t i = 0; i < out.patterns.size(); ++i) {
        int n = out.patterns[i].total();
        out.probs[i] = out.probs[i] / (std::pow(eta, n) * std::pow(gamma, 2 * n));
        mass += out.probs[i];
    }
    require(mass > 0.0, "postprocess_rescale: all-zero input list");
    for (double& p : out.probs) p /= mass;
    out.normalization = mass;
    out.normalized = true;
    return out;
}

/**
@brief Bhattacharyya (statistical) fidelity between two profiles on the same
grid, F = sum_w sqrt(p_w q_w); inputs are normalized first so F(p, p) = 1.
*/
inline double profile_fidelity(const FcProfile& p, const FcProfile& q) {
    require(p.frequencies.size() == q.frequencies.size(),
            "profile_fidelity: profiles live on different grids");
    for (std::size_t i = 0; i < p.frequencies.size(); ++i)
        require(std::abs(p.frequencies[i] - q.frequencies[i]) <
                    1e-9 * (1.0 + std::abs(p.frequencies[i])),
                "profile_fidelity: profiles live on different grids");
    double pm = p.total_mass();
    double qm = q.total_mass();
    require(pm > 0.0 && qm > 0.0, "profile_fidelity: zero-mass profile");
    KahanSum f;
    for (std::size_t i = 0; i < p.masses.size(); ++i)
        f.add(std::sqrt((p.masses[i] / pm) * (q.masses[i] / qm)));
    return f.value();
}

/** @brief Quantum enhancement: fidelity gain of the reconstruction over the classical baseline. */
inline double quantum_enhancement(double fq, double fc_classical) { return fq - fc_classical; }

/**
@brief Seeded synthetic molecule: frequencies uniform on [500, 2000] arbitrary
units, a Haar-random real orthogonal Duschinsky rotation, zero displacement.
*/
inline MoleculeSpec random_molecule(std::size_t m, std::uint64_t seed) {
    require(m >= 1, "random_molecule: need at least one mode");
    Rng rng(seed);
    MoleculeSpec mol;
    for (std::size_t i = 0; i < m; ++i) {
        mol.omega.push_back(500.0 + 1500.0 * rng.uniform01());
        mol.omega_prime.push_back(500.0 + 1500.0 * rng.uniform01());
    }
    mol.displacement.assign(m, 0.0);

    Eigen::MatrixXd g(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) g(r, c) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd qmat = qr.householderQ();
    Eigen::MatrixXd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t c = 0; c < m; ++c)
        if (rmat(c, c) < 0.0) qmat.col(c) *= -1.0;
    mol.duschinsky = ComplexMatrix(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) mol.duschinsky(r, c) = qmat(r, c);
    mol.validate();
    return mol;
}

/**
@brief Reconstruction-quality study over a grid of squeezing boosts.

For each boost g the device runs the molecule's circuit with amplified
squeezing tanh(xi_dev) = g tanh(xi) and uniform loss eta; a seeded finite
sample of its truncated output distribution is inverted through the device
response (gamma = sqrt(g), so the per-pattern factor is eta^n g^n) and binned
into a profile. Returned values are the enhancements C(g) = F_Q(g) - F_C,
where F_C is the vacuum-baseline fidelity of the ideal profile. Small boosts
starve the estimate of photons, large boosts push mass past the truncation and
the loss model's validity, so C rises and then falls.
*/
inline std::vector<double> enhancement_curve(const MoleculeSpec& mol,
                                             const std::vector<double>& boosts, double eta,
                                             int truncation_n, std::size_t samples,
                                             std::uint64_t seed) {
    require(!boosts.empty(), "enhancement_curve: empty boost grid");
    require(samples >= 1, "enhancement_curve: need at least one sample");
    DoktorovDecomposition dok = doktorov_decompose(mol);
    const std::size_t m = dok.modes();

    FcProfile ideal = fc_profile(dok, mol.omega_prime, truncation_n);
    double f_classical = profile_fidelity(ideal, vacuum_profile(ideal));

    Interferometer interf;
    interf.unitary = dok.u_left.transpose();
    interf.input_modes.resize(m);
    std::iota(interf.input_modes.begin(), interf.input_modes.end(), 0);

    PatternDomain domain = PatternDomain::truncated_total(m, truncation_n);
    std::vector<double> curve;
    for (std::size_t b = 0; b < boosts.size(); ++b) {
        double g = boosts[b];
        require(g > 0.0, "enhancement_curve: boosts must be positive");
        std::vector<double> xi_dev(m);
        for (std::size_t i = 0; i < m; ++i) {
            double t = g * std::tanh(dok.xi[i]);
            require(std::abs(t) < 0.999, "enhancement_curve: boost saturates a squeezer");
            xi_dev[i] = std::atanh(t);
        }

        MixedStateEvaluator device(interf, SqueezerBank(xi_dev), eta, truncation_n);
        Distribution dist = build_distribution(
            [&device](const FockPattern& k) { return device.probability(k); }, domain);

        // Finite-sample estimate of the truncated device output.
        std::vector<FockPattern> draws = sample(dist, seed + b, samples);
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < dist.patterns.size(); ++i)
            index[dist.patterns[i].occupations()] = i;
        Distribution empirical = dist;
        std::fill(empirical.probs.begin(), empirical.probs.end(), 0.0);
        for (const FockPattern& d : draws)
            empirical.probs[index[d.occupations()]] += 1.0 / static_cast<double>(samples);

        Distribution recovered = postprocess_rescale(empirical, eta, std::sqrt(g));
        // Bin the recovered list on the ideal grid (nearest bin absorbs each pattern).
        FcProfile rec;
        rec.truncation_n = truncation_n;
        rec.frequencies = ideal.frequencies;
        rec.masses.assign(ideal.frequencies.size(), 0.0);
        for (std::size_t i = 0; i < recovered.patterns.size(); ++i) {
            double energy = 0.0;
            for (std::size_t q = 0; q < m; ++q)
                energy += mol.omega_prime[q] * recovered.patterns[i][q];
            std::size_t best = 0;
            double best_gap = std::numeric_limits<double>::infinity();
            for (std::size_t bin = 0; bin < rec.frequencies.size(); ++bin) {
                double gap = std::abs(rec.frequencies[bin] - energy);
                if (gap < best_gap) {
                    best_gap = gap;
                    best = bin;
                }
            }
            rec.masses[best] += recovered.probs[i];
        }
        curve.push_back(quantum_enhancement(profile_fidelity(rec, ideal), f_classical));
    }
    return curve;
}

}  // namespace bosim

#endif  // BOSIM_VIBRONIC_HPP
