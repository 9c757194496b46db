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

#ifndef BOSIM_MATRIX_HPP
#define BOSIM_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>

#include "common.hpp"

namespace bosim {

/**
@brief Dense row-major complex matrix. Deliberately minimal: storage, element access
and the handful of algebraic helpers the simulator needs.
*/
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        require(data_.size() == rows_ * cols_, "ComplexMatrix: data size mismatch");
        for (const Complex& z : data_)
            require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                    "ComplexMatrix: non-finite entry");
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            require(row.size() == cols_, "ComplexMatrix: ragged initializer");
            for (const Complex& z : row) data_.push_back(z);
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix transpose() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = std::conj(data_[i]);
        return m;
    }

    ComplexMatrix adjoint() const { return conjugate().transpose(); }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const {
        require(cols_ == rhs.rows_, "ComplexMatrix: incompatible product dimensions");
        ComplexMatrix out(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < cols_; ++k) {
                Complex a = (*this)(r, k);
                if (a == Complex(0.0, 0.0)) continue;
                for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
            }
        }
        return out;
    }

    ComplexMatrix operator+(const ComplexMatrix& rhs) const {
        require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "ComplexMatrix: incompatible sum");
        ComplexMatrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
        return out;
    }

    ComplexMatrix operator-(const ComplexMatrix& rhs) const {
        require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "ComplexMatrix: incompatible difference");
        ComplexMatrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
        return out;
    }

    ComplexMatrix scaled(const Complex& s) const {
        ComplexMatrix out = *this;
        for (Complex& z : out.data_) z *= s;
        return out;
    }

    /** @brief Direct sum: block-diagonal stacking of this and rhs. */
    ComplexMatrix direct_sum(const ComplexMatrix& rhs) const {
        ComplexMatrix out(rows_ + rhs.rows_, cols_ + rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
        for (std::size_t r = 0; r < rhs.rows_; ++r)
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(rows_ + r, cols_ + c) = rhs(r, c);
        return out;
    }

    /** @brief Largest absolute entry of (this - rhs); infinity-norm distance. */
    double max_abs_diff(const ComplexMatrix& rhs) const {
        require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "ComplexMatrix: incompatible compare");
        double d = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i)
            d = std::max(d, std::abs(data_[i] - rhs.data_[i]));
        return d;
    }

    /** @brief True when M * M^dagger is the identity within tol. */
    bool is_unitary(double tol = 1e-10) const {
        if (!square()) return false;
        ComplexMatrix g = (*this) * adjoint();
        return g.max_abs_diff(identity(rows_)) < tol;
    }

    /** @brief True when the matrix equals its own transpose within tol, diagonal included. */
    bool is_symmetric(double tol = 1e-10) const {
        if (!square()) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if (std::abs((*this)(r, c) - (*this)(c, r)) >= tol) return false;
        return true;
    }

    /** @brief True when the matrix equals its own adjoint within tol. */
    bool is_hermitian(double tol = 1e-10) const {
        if (!square()) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r; c < cols_; ++c)
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) >= tol) return false;
        return true;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

/**
@brief Photon occupation pattern over a fixed number of modes.
*/
class FockPattern {
public:
    FockPattern() = default;

    explicit FockPattern(std::vector<int> occupations) : occ_(std::move(occupations)) {
        for (int k : occ_) require(k >= 0, "FockPattern: negative occupation");
    }

    static FockPattern vacuum(std::size_t modes) { return FockPattern(std::vector<int>(modes, 0)); }

    std::size_t modes() const { return occ_.size(); }
    int operator[](std::size_t i) const { return occ_[i]; }
    const std::vector<int>& occupations() const { return occ_; }

    int total() const { return std::accumulate(occ_.begin(), occ_.end(), 0); }

    bool is_collision_free() const {
        return std::all_of(occ_.begin(), occ_.end(), [](int k) { return k <= 1; });
    }

    int max_occupancy() const {
        return occ_.empty() ? 0 : *std::max_element(occ_.begin(), occ_.end());
    }

    /** @brief Product of occupation factorials, the k1!...km! normalisation. */
    double factorial_product() const {
        double f = 1.0;
        for (int k : occ_) f *= factorial(k);
        return f;
    }

    /** @brief Componentwise sum with another pattern on the same mode count. */
    FockPattern operator+(const FockPattern& rhs) const {
        require(modes() == rhs.modes(), "FockPattern: mode count mismatch");
        std::vector<int> s(occ_);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += rhs.occ_[i];
        return FockPattern(std::move(s));
    }

    bool operator==(const FockPattern& rhs) const { return occ_ == rhs.occ_; }
    bool operator<(const FockPattern& rhs) const { return occ_ < rhs.occ_; }

private:
    std::vector<int> occ_;
};

}  // namespace bosim

#endif  // BOSIM_MATRIX_HPP
