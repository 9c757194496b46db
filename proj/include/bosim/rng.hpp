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

#ifndef BOSIM_RNG_HPP
#define BOSIM_RNG_HPP

#include <random>

#include "common.hpp"

namespace bosim {

/**
@brief Seeded random stream. Gaussian draws use an explicit Box-Muller transform on
raw 53-bit uniforms instead of std::normal_distribution, whose output sequence is
implementation defined; identical seeds must reproduce identical artifacts.
*/
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /** @brief Uniform double in [0, 1) with 53 random bits. */
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /** @brief Standard normal via Box-Muller; caches the second deviate. */
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /** @brief Standard complex normal (independent real/imag parts). */
    Complex complex_gaussian() { return Complex(gaussian(), gaussian()); }

    /** @brief Uniform integer in [0, n). */
    std::size_t uniform_index(std::size_t n) {
        require(n > 0, "Rng: empty range");
        // Rejection sampling keeps the draw exactly uniform.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return static_cast<std::size_t>(x % n);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bosim

#endif  // BOSIM_RNG_HPP
