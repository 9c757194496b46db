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

#ifndef BOSIM_COMMON_HPP
#define BOSIM_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosim {

/** @brief Library version, recorded in run manifests. */
inline constexpr const char* kVersion = "1.0.0";

using Complex = std::complex<double>;

/**
@brief Error type thrown on every precondition or physicality violation.
*/
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/**
@brief Throws Error with the given message when cond is false.
*/
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

/**
@brief Compensated (Kahan) accumulator for long sums of doubles.
*/
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/**
@brief Compensated accumulator for complex sums (Kahan on both components).
*/
class KahanSumComplex {
public:
    void add(const Complex& z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_;
    KahanSum im_;
};

/**
@brief Exact factorial for small arguments (n <= 20 fits in double exactly up to 18!).
*/
inline double factorial(int n) {
    require(n >= 0, "factorial: negative argument");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/**
@brief log(n!) via lgamma, for rate formulas that overflow plain factorials.
*/
inline double log_factorial(double n) {
    require(n >= 0.0, "log_factorial: negative argument");
    return std::lgamma(n + 1.0);
}

/**
@brief Exact binomial coefficient C(n, k) for integer arguments.
*/
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return std::round(c);
}

/**
@brief log C(x, k) for real x > k - 1, used by the pair-number distributions where
the upper argument can be a half-integer.
*/
inline double log_binomial_real(double x, double k) {
    require(k >= 0.0, "log_binomial_real: negative lower argument");
    require(x - k > -1.0, "log_binomial_real: gamma pole in upper argument");
    return std::lgamma(x + 1.0) - std::lgamma(k + 1.0) - std::lgamma(x - k + 1.0);
}

/**
@brief Relative error |a-b| / max(|b|, floor); floor guards the zero-reference case.
*/
inline double relative_error(double a, double b, double floor_scale = 1e-300) {
    double denom = std::max(std::abs(b), floor_scale);
    return std::abs(a - b) / denom;
}

/**
@brief Worker count for pattern-parallel evaluation, from the BOSIM_THREADS
environment variable. Defaults to 1 (fully sequential) and is clamped to [1, 256].
*/
inline int thread_count() {
    const char* env = std::getenv("BOSIM_THREADS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return 1;
    return static_cast<int>(std::min(v, 256L));
}

}  // namespace bosim

#endif  // BOSIM_COMMON_HPP
