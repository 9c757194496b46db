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

#ifndef BOSIM_CIRCUITS_HPP
#define BOSIM_CIRCUITS_HPP

#include "kernels.hpp"
#include "rng.hpp"

namespace bosim {

/**
@brief Linear interferometer: an m x m unitary plus the subset of modes used as
photon inputs.

Convention fixed throughout the library: U(p, q) is the transition amplitude from
INPUT mode p (row) to OUTPUT mode q (column), i.e. creation operators map as
a^dag_p -> sum_q U(p, q) b^dag_q. Any consistent convention gives the same
physics; this one is used everywhere and documented in the README.
*/
struct Interferometer {
    ComplexMatrix unitary;
    std::vector<std::size_t> input_modes;

    std::size_t m() const { return unitary.rows(); }

    /** @brief Checks unitarity and that input modes are strictly increasing and in range. */
    void validate(double tol = 1e-10) const {
        require(unitary.square(), "Interferometer: unitary must be square");
        require(unitary.is_unitary(tol), "Interferometer: matrix is not unitary");
        require(!input_modes.empty(), "Interferometer: no input modes");
        for (std::size_t i = 0; i < input_modes.size(); ++i) {
            require(input_modes[i] < m(), "Interferometer: input mode out of range");
            if (i > 0)
                require(input_modes[i] > input_modes[i - 1],
                        "Interferometer: input modes must be strictly increasing");
        }
    }
};

/**
@brief Haar-random m x m unitary: QR of a complex Ginibre matrix with the R diagonal
phase-fixed. Deterministic for a fixed seed.
*/
inline ComplexMatrix haar_random_unitary(std::size_t m, std::uint64_t seed) {
    require(m >= 1, "haar_random_unitary: m must be positive");
    Rng rng(seed);
    Eigen::MatrixXcd g(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) g(r, c) = rng.complex_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fixing the phases of the R diagonal makes the distribution exactly Haar.
    Eigen::VectorXcd ph(m);
    for (std::size_t i = 0; i < m; ++i) {
        Complex d = r(i, i);
        ph(i) = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return detail::from_eigen(q * ph.asDiagonal());
}

/**
@brief Continuously coupled waveguide array: U = exp(i * length * H) with H the
real-symmetric tridiagonal Hamiltonian built from nearest-neighbour couplings
(off-diagonal) and propagation constants (diagonal).
*/
inline ComplexMatrix coupled_waveguide_unitary(const std::vector<double>& couplings,
                                               const std::vector<double>& propagation,
                                               double length) {
    std::size_t m = propagation.size();
    require(m >= 1, "coupled_waveguide_unitary: need at least one mode");
    require(couplings.size() + 1 == m,
            "coupled_waveguide_unitary: need exactly m-1 couplings for m modes");
    require(std::isfinite(length), "coupled_waveguide_unitary: non-finite length");
    for (double c : couplings) require(std::isfinite(c), "coupled_waveguide_unitary: non-finite coupling");
    for (double p : propagation) require(std::isfinite(p), "coupled_waveguide_unitary: non-finite propagation constant");
    ComplexMatrix h(m, m);
    for (std::size_t i = 0; i < m; ++i) h(i, i) = propagation[i];
    for (std::size_t i = 0; i + 1 < m; ++i) {
        h(i, i + 1) = couplings[i];
        h(i + 1, i) = couplings[i];
    }
    return matrix_exp_i_hermitian(h, length);
}

/**
@brief Rectangular transfer matrix: the rows of U selected by the interferometer's
input modes, shape (#inputs) x m.
*/
inline ComplexMatrix transfer_matrix(const Interferometer& interf) {
    interf.validate();
    ComplexMatrix t(interf.input_modes.size(), interf.m());
    for (std::size_t r = 0; r < interf.input_modes.size(); ++r)
        for (std::size_t c = 0; c < interf.m(); ++c)
            t(r, c) = interf.unitary(interf.input_modes[r], c);
    return t;
}

/**
@brief Doubled circuit turning k two-mode-squeezed sources into 2k single-mode
squeezers feeding two copies of the k x m transfer matrix T.

Mode layout (fixed convention): source rows 0..k-1 are the top arms, k..2k-1 the
bottom arms; pair j is (j, k+j). Output columns 0..m-1 are the top copy of T,
m..2m-1 the bottom copy. Each pair passes a phase shifter diag(1, i) on the bottom
arm and then the balanced beam splitter [[1, 1], [-1, 1]]/sqrt(2); in the row=input
convention the composite 2x2 block is (U_bs * U_ps)^T. Returns the 2k x 2m matrix.
*/
inline ComplexMatrix doubled_gbs_circuit(const ComplexMatrix& t) {
    std::size_t k = t.rows();
    std::size_t m = t.cols();
    require(k >= 1 && m >= 1, "doubled_gbs_circuit: empty transfer matrix");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Row=input form of (beam splitter) after (phase shifter on the bottom arm).
    const Complex g00(inv_sqrt2, 0.0), g01(-inv_sqrt2, 0.0);
    const Complex g10(0.0, inv_sqrt2), g11(0.0, inv_sqrt2);
    ComplexMatrix out(2 * k, 2 * m);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < m; ++c) {
            Complex top = t(j, c);
            // Top source j: weight g00 into the top copy, g01 into the bottom copy.
            out(j, c) = g00 * top;
            out(j, m + c) = g01 * top;
            // Bottom source k+j: weight g10 / g11.
            out(k + j, c) = g10 * top;
            out(k + j, m + c) = g11 * top;
        }
    }
    return out;
}

/**
@brief The 12-mode device used throughout the examples: a seeded Haar unitary with
the four central modes {4, 5, 6, 7} as inputs.
*/
inline Interferometer default_device(std::uint64_t seed) {
    Interferometer interf{haar_random_unitary(12, seed), {4, 5, 6, 7}};
    interf.validate();
    return interf;
}

}  // namespace bosim

#endif  // BOSIM_CIRCUITS_HPP
