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

#ifndef BOSIM_FOCKSPACE_HPP
#define BOSIM_FOCKSPACE_HPP

#include <map>

#include "gaussian.hpp"
#include "patterns.hpp"

namespace bosim {

/**
@brief Fock amplitudes of single-mode squeezed vacuum up to a photon cutoff.

psi[2j] = sech(xi)^(1/2) * sqrt((2j)!) / (2^j j!) * tanh(xi)^j, odd entries are
zero. The sign convention (plus tanh, no alternating phase) matches the
symmetric-kernel construction B = U^T diag(tanh xi) U used by the hafnian law.
*/
inline std::vector<double> squeezed_vacuum_amplitudes(double xi, int cutoff) {
    require(std::isfinite(xi) && std::abs(xi) < 4.0,
            "squeezed_vacuum_amplitudes: |xi| must stay below 4");
    require(cutoff >= 0, "squeezed_vacuum_amplitudes: negative cutoff");
    std::vector<double> psi(static_cast<std::size_t>(cutoff) + 1, 0.0);
    const double th = std::tanh(xi);
    double coeff = std::sqrt(1.0 / std::cosh(xi));  // sech^(1/2), times tanh^j sqrt((2j)!)/(2^j j!)
    psi[0] = coeff;
    for (int j = 1; 2 * j <= cutoff; ++j) {
        // Ratio of successive even amplitudes: psi_{2j} / psi_{2j-2} = tanh * sqrt(2j-1) / sqrt(2j) * ... derived below.
        // sqrt((2j)!)/(2^j j!) = sqrt((2j-2)!)/(2^{j-1} (j-1)!) * sqrt((2j-1)(2j)) / (2j)
        coeff *= th * std::sqrt((2.0 * j - 1.0) * (2.0 * j)) / (2.0 * j);
        psi[2 * j] = coeff;
    }
    return psi;
}

/**
@brief Density matrix (photon basis, real entries) of squeezed vacuum after a
pure-loss channel of transmission eta, truncated at the given cutoff.

Built from the Kraus decomposition of the loss channel,
  <s|K_l|psi> = sqrt(C(s+l, l)) eta^(s/2) (1-eta)^(l/2) psi_{s+l},
summed over the number of lost photons l. Entries vanish unless s and t share
parity. The loss sum is truncated at l = 60, far past double precision for the
squeezing magnitudes this library admits.
*/
inline std::vector<std::vector<double>> lossy_squeezed_dm(double xi, double eta, int cutoff) {
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
            "lossy_squeezed_dm: transmission must lie in [0, 1]");
    require(cutoff >= 0, "lossy_squeezed_dm: negative cutoff");
    const int l_max = 60;
    std::vector<double> psi = squeezed_vacuum_amplitudes(xi, cutoff + l_max);

    // Kraus amplitudes a[s][l] = <s|K_l|psi>.
    std::vector<std::vector<double>> amp(static_cast<std::size_t>(cutoff) + 1,
                                         std::vector<double>(l_max + 1, 0.0));
    for (int s = 0; s <= cutoff; ++s)
        for (int l = 0; l <= l_max; ++l) {
            if (psi[s + l] == 0.0) continue;
            // sqrt(C(s + l, l)), evaluated in log space.
            double c = std::exp(0.5 * (log_factorial(s + l) - log_factorial(s) - log_factorial(l)));
            amp[s][l] = c * std::pow(eta, 0.5 * s) * std::pow(1.0 - eta, 0.5 * l) * psi[s + l];
        }

    std::vector<std::vector<double>> rho(static_cast<std::size_t>(cutoff) + 1,
                                         std::vector<double>(static_cast<std::size_t>(cutoff) + 1, 0.0));
    for (int s = 0; s <= cutoff; ++s)
        for (int t = 0; t <= cutoff; ++t) {
            if (((s ^ t) & 1) != 0) continue;  // parity selection rule
            double acc = 0.0;
            for (int l = 0; l <= l_max; ++l) acc += amp[s][l] * amp[t][l];
            rho[s][t] = acc;
        }
    return rho;
}

/**
@brief Exact output probabilities for lossy squeezed sources routed through an
interferometer, evaluated in the photon-number basis.

Loss acts on each source before the unitary, so the post-loss density matrices
factorise per mode and photon number is conserved from there on. For an output
pattern k with n photons,

  p(k) = sum_{s,t : |s| = |t| = n} [ prod_i rho^(i)_{s_i, t_i} ] * A(k,s) * conj(A(k,t)),

where A(k,s) = Per(U_{s,k}) / sqrt(prod s! prod k!) is the lossless transition
amplitude (rows of U repeated by the input pattern, columns by the output
pattern). Sector data (input patterns and the joint source matrix) are cached
per photon total.
*/
class MixedStateEvaluator {
public:
    MixedStateEvaluator(const Interferometer& interf, const SqueezerBank& bank, double eta,
                        int max_total)
        : unitary_(interf.unitary), m_(interf.m()), max_total_(max_total) {
        interf.validate();
        require(bank.size() == m_, "MixedStateEvaluator: one squeezer per device mode required");
        require(max_total >= 0 && max_total <= 10,
                "MixedStateEvaluator: photon total capped at 10");
        for (std::size_t i = 0; i < m_; ++i)
            rho_.push_back(lossy_squeezed_dm(bank.xi[i], eta, max_total));
    }

    std::size_t modes() const { return m_; }

    /** @brief Probability of one output pattern; total must not exceed the cap. */
    double probability(const FockPattern& k) const {
        require(k.modes() == m_, "MixedStateEvaluator: pattern has the wrong mode count");
        const int n = k.total();
        require(n <= max_total_, "MixedStateEvaluator: pattern exceeds the photon cap");
        const Sector& sec = sector(n);
        const std::size_t np = sec.inputs.size();

        // Transition amplitudes for this output pattern against every input pattern.
        std::vector<Complex> v(np);
        const double logkf = std::log(k.factorial_product());
        for (std::size_t a = 0; a < np; ++a) {
            const FockPattern& s = sec.inputs[a];
            ComplexMatrix sub = repeat_submatrix(unitary_, s, k);
            double norm = std::exp(-0.5 * (std::log(s.factorial_product()) + logkf));
            v[a] = permanent(sub) * norm;
        }

        // p = v^dagger R v with the real symmetric joint source matrix R.
        double p = 0.0;
        for (std::size_t a = 0; a < np; ++a) {
            Complex w(0.0, 0.0);
            const std::vector<double>& row = sec.joint[a];
            for (std::size_t b = 0; b < np; ++b) {
                if (row[b] != 0.0) w += row[b] * std::conj(v[b]);
            }
            p += (v[a] * w).real();
        }
        return std::max(p, 0.0);
    }

private:
    struct Sector {
        std::vector<FockPattern> inputs;
        std::vector<std::vector<double>> joint;  // R[a][b] = prod_i rho^(i)[s_a(i)][s_b(i)]
    };

    const Sector& sector(int n) const {
        auto it = sectors_.find(n);
        if (it != sectors_.end()) return it->second;
        Sector sec;
        sec.inputs = enumerate_patterns(PatternDomain::fixed_total(m_, n));
        const std::size_t np = sec.inputs.size();
        sec.joint.assign(np, std::vector<double>(np, 0.0));
        for (std::size_t a = 0; a < np; ++a)
            for (std::size_t b = a; b < np; ++b) {
                double prod = 1.0;
                for (std::size_t i = 0; i < m_ && prod != 0.0; ++i)
                    prod *= rho_[i][sec.inputs[a][i]][sec.inputs[b][i]];
                sec.joint[a][b] = prod;
                sec.joint[b][a] = prod;
            }
        return sectors_.emplace(n, std::move(sec)).first->second;
    }

    ComplexMatrix unitary_;
    std::size_t m_;
    int max_total_;
    std::vector<std::vector<std::vector<double>>> rho_;
    mutable std::map<int, Sector> sectors_;
};

}  // namespace bosim

#endif  // BOSIM_FOCKSPACE_HPP
