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

#ifndef BOSIM_PATTERNS_HPP
#define BOSIM_PATTERNS_HPP

#include "matrix.hpp"

namespace bosim {

/** @brief Guard on enumeration size: domains beyond this are rejected up front. */
inline constexpr std::size_t kMaxDomainSize = 1000000;

/**
@brief Pattern domain over which distributions are built and normalised.

 - CollisionFree: exactly n photons, occupancy <= 1.
 - MaxOccupancy2: exactly n photons, occupancy <= 2.
 - FixedTotal:    exactly n photons, any occupancy.
 - TruncatedTotal: all patterns with total <= n (any occupancy).
*/
struct PatternDomain {
    enum class Kind { CollisionFree, MaxOccupancy2, FixedTotal, TruncatedTotal };

    Kind kind = Kind::CollisionFree;
    std::size_t modes = 0;
    int n = 0;

    static PatternDomain collision_free(std::size_t m, int n) {
        return {Kind::CollisionFree, m, n};
    }
    static PatternDomain max_occupancy_2(std::size_t m, int n) {
        return {Kind::MaxOccupancy2, m, n};
    }
    static PatternDomain fixed_total(std::size_t m, int n) { return {Kind::FixedTotal, m, n}; }
    static PatternDomain truncated_total(std::size_t m, int n) {
        return {Kind::TruncatedTotal, m, n};
    }

    std::string tag() const {
        switch (kind) {
            case Kind::CollisionFree: return "collision-free-" + std::to_string(n);
            case Kind::MaxOccupancy2: return "max-occupancy-2-" + std::to_string(n);
            case Kind::FixedTotal: return "fixed-total-" + std::to_string(n);
            case Kind::TruncatedTotal: return "full-truncated-" + std::to_string(n);
        }
        return "unknown";
    }

    bool contains(const FockPattern& p) const {
        if (p.modes() != modes) return false;
        switch (kind) {
            case Kind::CollisionFree: return p.total() == n && p.max_occupancy() <= 1;
            case Kind::MaxOccupancy2: return p.total() == n && p.max_occupancy() <= 2;
            case Kind::FixedTotal: return p.total() == n;
            case Kind::TruncatedTotal: return p.total() <= n;
        }
        return false;
    }
};

namespace detail {

/**
@brief Emits all patterns with exactly n photons over m modes with the given
per-mode occupancy cap, in lexicographic order of the occupied-mode multiset
(photons placed left to right). The collision-free order therefore starts at
modes {0, 1, 2, ...}.
*/
inline void emit_fixed_total(std::size_t m, int n, int cap, std::vector<int>& occ,
                             std::size_t mode, int placed, std::vector<FockPattern>& out) {
    if (placed == n) {
        out.push_back(FockPattern(occ));
        require(out.size() <= kMaxDomainSize, "enumerate_patterns: domain exceeds the size guard");
        return;
    }
    if (mode == m) return;
    int room = std::min(cap, n - placed);
    for (int k = room; k >= 0; --k) {
        occ[mode] = k;
        emit_fixed_total(m, n, cap, occ, mode + 1, placed + k, out);
    }
    occ[mode] = 0;
}

}  // namespace detail

/**
@brief Enumerates a pattern domain in a deterministic order: photon totals ascending
(for the truncated domain), then lexicographic in the occupied-mode multiset.
*/
inline std::vector<FockPattern> enumerate_patterns(const PatternDomain& dom) {
    require(dom.modes >= 1, "enumerate_patterns: need at least one mode");
    require(dom.n >= 0, "enumerate_patterns: negative photon number");
    std::vector<FockPattern> out;
    std::vector<int> occ(dom.modes, 0);
    switch (dom.kind) {
        case PatternDomain::Kind::CollisionFree:
            require(static_cast<std::size_t>(dom.n) <= dom.modes,
                    "enumerate_patterns: more photons than modes in a collision-free domain");
            detail::emit_fixed_total(dom.modes, dom.n, 1, occ, 0, 0, out);
            break;
        case PatternDomain::Kind::MaxOccupancy2:
            detail::emit_fixed_total(dom.modes, dom.n, 2, occ, 0, 0, out);
            break;
        case PatternDomain::Kind::FixedTotal:
            detail::emit_fixed_total(dom.modes, dom.n, dom.n, occ, 0, 0, out);
            break;
        case PatternDomain::Kind::TruncatedTotal:
            for (int t = 0; t <= dom.n; ++t)
                detail::emit_fixed_total(dom.modes, t, t, occ, 0, 0, out);
            break;
    }
    return out;
}

}  // namespace bosim

#endif  // BOSIM_PATTERNS_HPP
