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

#ifndef BOSIM_KERNELS_HPP
#define BOSIM_KERNELS_HPP

#include <Eigen/Dense>

#include "matrix.hpp"

namespace bosim {

/** @brief Hard cap on permanent dimension; 2^(n-1) loop passes beyond this are not desk scale. */
inline constexpr std::size_t kPermanentCap = 18;

/** @brief Hard cap on Hafnian dimension; (2k-1)!! matchings beyond this are not desk scale. */
inline constexpr std::size_t kHafnianCap = 16;

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c)
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
    return m;
}

/**
@brief Recursive Hafnian over the index subset "live": match the first live index
against every later one and recurse on the remainder.
*/
inline Complex hafnian_recurse(const ComplexMatrix& m, std::vector<std::size_t>& live) {
    if (live.empty()) return Complex(1.0, 0.0);
    std::size_t a = live.front();
    Complex acc(0.0, 0.0);
    std::vector<std::size_t> rest(live.size() - 2);
    for (std::size_t j = 1; j < live.size(); ++j) {
        std::size_t b = live[j];
        Complex w = m(a, b);
        if (w == Complex(0.0, 0.0)) continue;
        std::size_t pos = 0;
        for (std::size_t t = 1; t < live.size(); ++t)
            if (t != j) rest[pos++] = live[t];
        acc += w * hafnian_recurse(m, rest);
    }
    return acc;
}

}  // namespace detail

/**
@brief Permanent of a square complex matrix via the Glynn formula with Gray-code
iteration over the +-1 vectors, O(2^(n-1) * n). Column sums are updated in place
on each single sign flip; for n > 10 the outer sum is Kahan-compensated.
*/
inline Complex permanent(const ComplexMatrix& m, std::size_t hard_cap = kPermanentCap) {
    require(m.square(), "permanent: matrix must be square");
    std::size_t n = m.rows();
    require(n <= hard_cap, "permanent: dimension exceeds the hard cap");
    if (n == 0) return Complex(1.0, 0.0);
    if (n == 1) return m(0, 0);

    // delta[0] is pinned to +1; the remaining n-1 signs run through a Gray code.
    std::vector<Complex> colsum(n);
    for (std::size_t c = 0; c < n; ++c) {
        Complex s(0.0, 0.0);
        for (std::size_t r = 0; r < n; ++r) s += m(r, c);
        colsum[c] = s;
    }

    const bool compensate = n > 10;
    KahanSumComplex kacc;
    Complex acc(0.0, 0.0);
    double sign = 1.0;
    std::vector<int> delta(n, 1);

    std::uint64_t steps = 1ULL << (n - 1);
    std::uint64_t gray_prev = 0;
    for (std::uint64_t idx = 0;; ++idx) {
        Complex prod(1.0, 0.0);
        for (std::size_t c = 0; c < n; ++c) prod *= colsum[c];
        Complex term = prod * sign;
        if (compensate)
            kacc.add(term);
        else
            acc += term;

        if (idx + 1 == steps) break;
        std::uint64_t gray = (idx + 1) ^ ((idx + 1) >> 1);
        std::uint64_t changed = gray ^ gray_prev;
        gray_prev = gray;
        // Flipped row r (rows 1..n-1 map to Gray bits 0..n-2).
        std::size_t r = 1;
        while (!(changed & 1ULL)) {
            changed >>= 1;
            ++r;
        }
        double step = delta[r] > 0 ? -2.0 : 2.0;
        delta[r] = -delta[r];
        sign = -sign;
        for (std::size_t c = 0; c < n; ++c) colsum[c] += step * m(r, c);
    }

    Complex total = compensate ? kacc.value() : acc;
    double scale = std::ldexp(1.0, -static_cast<int>(n - 1));  // 2^(1-n)
    return total * scale;
}

/**
@brief Hafnian of an even-dimensional symmetric matrix: sum over perfect matchings,
computed by recursing on the first unmatched index, O((2k-1)!!). The diagonal is
never read. Symmetry is checked within sym_tol.
*/
inline Complex hafnian(const ComplexMatrix& m, double sym_tol = 1e-10,
                       std::size_t hard_cap = kHafnianCap) {
    require(m.square(), "hafnian: matrix must be square");
    std::size_t n = m.rows();
    require(n % 2 == 0, "hafnian: dimension must be even");
    require(n <= hard_cap, "hafnian: dimension exceeds the hard cap");
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c)
            require(std::abs(m(r, c) - m(c, r)) < sym_tol, "hafnian: matrix not symmetric");
    std::vector<std::size_t> live(n);
    for (std::size_t i = 0; i < n; ++i) live[i] = i;
    return detail::hafnian_recurse(m, live);
}

/**
@brief Builds the submatrix with row i repeated row_counts[i] times and column j
repeated col_counts[j] times, in index order. This is the U_{j,k} / B_k expansion
used by every pattern probability.
*/
inline ComplexMatrix repeat_submatrix(const ComplexMatrix& m, const FockPattern& row_counts,
                                      const FockPattern& col_counts) {
    require(row_counts.modes() == m.rows(), "repeat_submatrix: row pattern length mismatch");
    require(col_counts.modes() == m.cols(), "repeat_submatrix: column pattern length mismatch");
    std::vector<std::size_t> rsel, csel;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (int t = 0; t < row_counts[r]; ++t) rsel.push_back(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (int t = 0; t < col_counts[c]; ++t) csel.push_back(c);
    ComplexMatrix out(rsel.size(), csel.size());
    for (std::size_t r = 0; r < rsel.size(); ++r)
        for (std::size_t c = 0; c < csel.size(); ++c) out(r, c) = m(rsel[r], csel[c]);
    return out;
}

/** @brief Determinant via partially pivoted LU (Eigen backend). */
inline Complex determinant(const ComplexMatrix& m) {
    require(m.square(), "determinant: matrix must be square");
    if (m.rows() == 0) return Complex(1.0, 0.0);
    return detail::to_eigen(m).partialPivLu().determinant();
}

/** @brief Singular value decomposition M = U * diag(S) * V^T (note: transpose, not adjoint). */
struct SvdResult {
    ComplexMatrix u;
    std::vector<double> singular_values;
    ComplexMatrix v;  // M = u * diag(s) * v.transpose()
};

/**
@brief Full SVD (Eigen Jacobi backend). The right factor is returned so that
M = U * diag(S) * V^T holds exactly in the transposed convention the Doktorov
decomposition uses; for real input V is the usual real orthogonal factor.
*/
inline SvdResult svd(const ComplexMatrix& m) {
    require(m.square(), "svd: matrix must be square");
    Eigen::JacobiSVD<Eigen::MatrixXcd> solver(detail::to_eigen(m),
                                              Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult out;
    out.u = detail::from_eigen(solver.matrixU());
    // Eigen yields M = U S V^adjoint; conjugating V gives M = U S V^T.
    out.v = detail::from_eigen(solver.matrixV().conjugate());
    const auto& s = solver.singularValues();
    out.singular_values.assign(s.data(), s.data() + s.size());
    return out;
}

/**
@brief exp(i * scale * H) for Hermitian H via eigendecomposition; the result is
unitary by construction.
*/
inline ComplexMatrix matrix_exp_i_hermitian(const ComplexMatrix& h, double scale) {
    require(h.square(), "matrix_exp_i_hermitian: matrix must be square");
    require(h.is_hermitian(1e-10), "matrix_exp_i_hermitian: matrix must be Hermitian");
    require(std::isfinite(scale), "matrix_exp_i_hermitian: non-finite scale");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(h));
    require(solver.info() == Eigen::Success, "matrix_exp_i_hermitian: eigensolver failed");
    Eigen::VectorXcd phases(solver.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(Complex(0.0, scale * solver.eigenvalues()(i)));
    Eigen::MatrixXcd u = solver.eigenvectors() * phases.asDiagonal() *
                         solver.eigenvectors().adjoint();
    return detail::from_eigen(u);
}

/**
@brief Inverse via LU (Eigen backend); throws on (numerically) singular input.
*/
inline ComplexMatrix inverse(const ComplexMatrix& m) {
    require(m.square(), "inverse: matrix must be square");
    Eigen::MatrixXcd e = detail::to_eigen(m);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(e);
    require(lu.isInvertible(), "inverse: matrix is singular");
    return detail::from_eigen(lu.inverse());
}

/**
@brief Hermitian positive-definiteness check via Cholesky factorisation; the
tolerance shift absorbs rounding on eigenvalues at the zero boundary.
*/
inline bool is_positive_definite(const ComplexMatrix& m, double tol = 1e-9) {
    require(m.square(), "is_positive_definite: matrix must be square");
    Eigen::MatrixXcd a = detail::to_eigen(m);
    a += tol * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::LLT<Eigen::MatrixXcd> llt(a);
    return llt.info() == Eigen::Success;
}

}  // namespace bosim

#endif  // BOSIM_KERNELS_HPP
