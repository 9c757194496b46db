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

#ifndef BOSIM_GAUSSIAN_HPP
#define BOSIM_GAUSSIAN_HPP

#include "circuits.hpp"
#include "kernels.hpp"

namespace bosim {

/**
@brief Bank of single-mode squeezers, one squeezing parameter per source mode.

Parameters are real; negative values are legitimate (they flip the squeezing
quadrature) and arise from singular-value decompositions whose log-singular
values go below zero. Magnitudes are capped well inside the numerically safe
range for cosh/sinh arithmetic.
*/
struct SqueezerBank {
    std::vector<double> xi;

    SqueezerBank() = default;
    explicit SqueezerBank(std::vector<double> params) : xi(std::move(params)) {
        for (double v : xi) {
            require(std::isfinite(v), "SqueezerBank: non-finite squeezing parameter");
            require(std::abs(v) < 4.0, "SqueezerBank: |xi| must stay below 4");
        }
    }

    std::size_t size() const { return xi.size(); }

    /** @brief Mean photon number of the bank, sum over sources of sinh^2(xi). */
    double mean_photons() const {
        double s = 0.0;
        for (double v : xi) s += std::sinh(v) * std::sinh(v);
        return s;
    }
};

/** @brief Uniform pure-loss channel acting on every mode with transmission eta. */
struct LossChannel {
    double eta = 1.0;

    LossChannel() = default;
    explicit LossChannel(double transmission) : eta(transmission) {
        require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
                "LossChannel: transmission must lie in [0, 1]");
    }
};

namespace detail {

/**
@brief Doubled-size squeezing matrix [[diag cosh, diag sinh], [diag sinh, diag cosh]]
for the given per-mode parameters.
*/
inline ComplexMatrix squeeze_symplectic(const std::vector<double>& xi) {
    const std::size_t m = xi.size();
    ComplexMatrix s(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        s(i, i) = std::cosh(xi[i]);
        s(m + i, m + i) = std::cosh(xi[i]);
        s(i, m + i) = std::sinh(xi[i]);
        s(m + i, i) = std::sinh(xi[i]);
    }
    return s;
}

/**
@brief Doubled-size conjugation matrix blockdiag(M, conj(M)) implementing a passive
mode map M (row = output mode) on a Husimi covariance.
*/
inline ComplexMatrix passive_doubling(const ComplexMatrix& mode_map) {
    const std::size_t m = mode_map.rows();
    require(mode_map.cols() == m, "passive_doubling: mode map must be square");
    ComplexMatrix w(2 * m, 2 * m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            w(r, c) = mode_map(r, c);
            w(m + r, m + c) = std::conj(mode_map(r, c));
        }
    return w;
}

/** @brief Husimi covariance of a squeezer bank routed through a mode map. */
inline ComplexMatrix husimi_from_squeezers(const ComplexMatrix& mode_map,
                                           const std::vector<double>& xi) {
    const std::size_t m = mode_map.rows();
    require(xi.size() == m, "husimi_from_squeezers: one squeezer per mode required");
    ComplexMatrix w = passive_doubling(mode_map);
    ComplexMatrix s = squeeze_symplectic(xi);
    ComplexMatrix q = (w * s * s.adjoint() * w.adjoint()).scaled(0.5);
    for (std::size_t i = 0; i < 2 * m; ++i) q(i, i) += 0.5;
    return q;
}

/** @brief Removes one mode from a Husimi covariance (rows/cols i and i+m). */
inline ComplexMatrix drop_mode(const ComplexMatrix& sigma_q, std::size_t mode) {
    const std::size_t m = sigma_q.rows() / 2;
    require(sigma_q.rows() == 2 * m && sigma_q.cols() == 2 * m && mode < m,
            "drop_mode: malformed covariance or mode index");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < 2 * m; ++i)
        if (i != mode && i != m + mode) keep.push_back(i);
    ComplexMatrix out(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c) out(r, c) = sigma_q(keep[r], keep[c]);
    return out;
}

}  // namespace detail

/**
@brief Gaussian state of an m-mode device, held as the 2m x 2m Husimi covariance.

For a pure squeezed-vacuum input the symmetric kernel matrix that feeds the
hafnian-based probability law is also stored. The source parameters (squeezing
bank and a uniform transmission eta) are kept so that mixed-state evaluators can
reconstruct the per-source density matrices; eta = 1 marks a pure state.
*/
struct GaussianState {
    std::size_t m = 0;
    ComplexMatrix sigma_q;
    bool has_kernel = false;
    ComplexMatrix kernel_b;
    std::vector<double> xi;
    double eta = 1.0;
    Interferometer interf;
    bool has_interf = false;

    /** @brief Checks Hermiticity, the vacuum lower bound, and det >= 1 within tolerance. */
    void validate(double tol = 1e-9) const {
        require(m >= 1, "GaussianState: empty state");
        require(sigma_q.rows() == 2 * m && sigma_q.cols() == 2 * m,
                "GaussianState: covariance must be 2m x 2m");
        require(sigma_q.is_hermitian(1e-10), "GaussianState: covariance must be Hermitian");
        ComplexMatrix shifted = sigma_q;
        for (std::size_t i = 0; i < 2 * m; ++i) shifted(i, i) -= 0.5;
        require(is_positive_definite(shifted, tol),
                "GaussianState: covariance violates the vacuum lower bound");
        Complex det = determinant(sigma_q);
        require(std::abs(det.imag()) < 1e-6 && det.real() >= 1.0 - 1e-9,
                "GaussianState: covariance determinant must be >= 1");
    }

    double det_sigma_q() const { return determinant(sigma_q).real(); }
};

/**
@brief Husimi covariance of squeezed vacua pushed through an interferometer.

The unitary is stored with row = input mode, so the mode map acting on
annihilation operators is its transpose. The returned state also carries the
symmetric kernel  B = U^T diag(tanh xi) U  restricted to nothing (full square
unitary) that the pure-state probability law consumes.
*/
inline GaussianState build_sigma_q(const Interferometer& interf, const SqueezerBank& bank) {
    interf.validate();
    const std::size_t m = interf.m();
    require(bank.size() == m, "build_sigma_q: one squeezer per device mode required");

    GaussianState st;
    st.m = m;
    st.xi = bank.xi;
    st.eta = 1.0;
    st.interf = interf;
    st.has_interf = true;
    st.sigma_q = detail::husimi_from_squeezers(interf.unitary.transpose(), bank.xi);

    ComplexMatrix d(m, m);
    for (std::size_t i = 0; i < m; ++i) d(i, i) = std::tanh(bank.xi[i]);
    st.kernel_b = interf.unitary.transpose() * d * interf.unitary;
    st.has_kernel = true;
    return st;
}

/**
@brief Husimi covariance of squeezed vacua that each lose a fraction (1 - eta)
of their light before the interferometer.

Loss is realised physically: every source is paired with a vacuum ancilla on a
beamsplitter of transmission sqrt(eta), the joint covariance is built on the
doubled register, the ancillas are traced out, and the surviving modes are
propagated through the interferometer. At eta = 1 this reproduces
build_sigma_q (and only then is the pure-state kernel attached).
*/
inline GaussianState apply_uniform_loss(const SqueezerBank& bank, const Interferometer& interf,
                                        const LossChannel& loss) {
    interf.validate();
    const double eta = loss.eta;
    const std::size_t m = interf.m();
    require(bank.size() == m, "apply_uniform_loss: one squeezer per device mode required");
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
            "apply_uniform_loss: transmission must lie in [0, 1]");

    // Interleave sources with vacuum ancillas: signal modes sit at even
    // indices, their loss ancillas at the following odd index.
    std::vector<double> xi2(2 * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) xi2[2 * i] = bank.xi[i];

    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);
    ComplexMatrix bs(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        bs(2 * i, 2 * i) = t;
        bs(2 * i, 2 * i + 1) = r;
        bs(2 * i + 1, 2 * i) = -r;
        bs(2 * i + 1, 2 * i + 1) = t;
    }

    ComplexMatrix joint = detail::husimi_from_squeezers(bs, xi2);

    // Trace out the ancillas: drop from the highest index down so the
    // remaining labels stay valid.
    ComplexMatrix reduced = joint;
    for (std::size_t i = m; i-- > 0;) reduced = detail::drop_mode(reduced, 2 * i + 1);

    ComplexMatrix w = detail::passive_doubling(interf.unitary.transpose());
    GaussianState st;
    st.m = m;
    st.xi = bank.xi;
    st.eta = eta;
    st.interf = interf;
    st.has_interf = true;
    st.sigma_q = w * reduced * w.adjoint();
    if (eta == 1.0) {
        ComplexMatrix d(m, m);
        for (std::size_t i = 0; i < m; ++i) d(i, i) = std::tanh(bank.xi[i]);
        st.kernel_b = interf.unitary.transpose() * d * interf.unitary;
        st.has_kernel = true;
    }
    return st;
}

/** @brief Photon-pair source flavours: two-mode (nondegenerate) or single-mode (degenerate). */
enum class SourceKind { Nondegenerate, Degenerate };

/**
@brief Two-photon emission probability of a squeezed source per pump pulse.

Nondegenerate (two-mode squeezer, signal + herald arms): tanh^2(xi)/cosh^2(xi),
the probability of exactly one pair. Degenerate (single-mode squeezer, both
photons in one mode): tanh^2(xi)/(2 cosh(xi)), the two-photon Fock weight.
*/
inline double source_efficiency(double xi, SourceKind kind) {
    require(std::isfinite(xi) && xi >= 0.0, "source_efficiency: xi must be finite and >= 0");
    double th = std::tanh(xi);
    if (kind == SourceKind::Nondegenerate) {
        double ch = std::cosh(xi);
        return th * th / (ch * ch);
    }
    return th * th / (2.0 * std::cosh(xi));
}

/**
@brief Heralded-state purity estimated from the unheralded second-order
correlation at zero delay, P = g2(0) - 1. Valid for thermal marginals, where
g2(0) ranges from 1 (many thermal modes) to 2 (single mode, unit purity).
*/
inline double purity_from_g2(double g2) {
    require(std::isfinite(g2) && g2 >= 1.0 && g2 <= 2.0,
            "purity_from_g2: g2(0) must lie in [1, 2]");
    return g2 - 1.0;
}

}  // namespace bosim

#endif  // BOSIM_GAUSSIAN_HPP
