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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "testutil.hpp"

#include <cmath>
#include <vector>

using namespace bosim;

namespace {

RateParams unit_efficiency(double xi, int k, int m) {
    RateParams p;
    p.r0 = 1.0e6;
    p.eta_det = 1.0;
    p.eta_ch = 1.0;
    p.eta_u = 1.0;
    p.xi = xi;
    p.k = k;
    p.m = m;
    return p;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("unit-efficiency rates reduce to the generation terms") {
    // Scattershot: R0 C(k,n) tanh^{2n} sech^{2k}.
    RateParams p = unit_efficiency(0.2, 10, 5);
    double th = std::tanh(0.2), sech = 1.0 / std::cosh(0.2);
    double want = 1.0e6 * binomial(10, 3) * std::pow(th, 6) * std::pow(sech, 20);
    CHECK(rel(event_rate(RateProtocol::Sbs, 3, p), want) < 1e-12);

    // Gaussian: R0 C(k/2 + n/2 - 1, n/2) tanh^n sech^k.
    double want_g = 1.0e6 * binomial(6, 2) * std::pow(th, 4) * std::pow(sech, 10);
    CHECK(rel(event_rate(RateProtocol::Gbs, 4, p), want_g) < 1e-12);

    // Odd source counts use the gamma-function binomial: C(5.5, 2) = 12.375.
    RateParams odd = unit_efficiency(0.2, 9, 5);
    double want_o = 1.0e6 * 12.375 * std::pow(th, 4) * std::pow(sech, 9);
    CHECK(rel(event_rate(RateProtocol::Gbs, 4, odd), want_o) < 1e-12);
}

TEST_CASE("efficiency factors enter with the printed exponents") {
    RateParams p = unit_efficiency(0.2, 8, 12);
    p.eta_det = 0.8;
    p.eta_ch = 0.64;
    p.eta_u = 0.999;
    double base_s = event_rate(RateProtocol::Sbs, 3, unit_efficiency(0.2, 8, 12));
    // Scattershot counts both signal and herald arms: squared per-photon factors.
    double want_s = base_s * std::pow(0.8, 6) * std::pow(0.64, 6) * std::pow(0.999, 36);
    CHECK(rel(event_rate(RateProtocol::Sbs, 3, p), want_s) < 1e-12);

    double base_g = event_rate(RateProtocol::Gbs, 4, unit_efficiency(0.2, 8, 12));
    double want_g = base_g * std::pow(0.8, 4) * std::pow(0.64, 4) * std::pow(0.999, 48);
    CHECK(rel(event_rate(RateProtocol::Gbs, 4, p), want_g) < 1e-12);
}

TEST_CASE("rate model rejects invalid requests") {
    RateParams p;  // defaults are the characterised spiral values
    CHECK_THROWS_AS(event_rate(RateProtocol::Gbs, 5, p), Error);   // odd pair count
    CHECK_THROWS_AS(event_rate(RateProtocol::Sbs, 101, p), Error); // more photons than sources
    CHECK_THROWS_AS(event_rate(RateProtocol::Sbs, 0, p), Error);
    RateParams zero_xi = p;
    zero_xi.xi = 0.0;
    CHECK_THROWS_AS(event_rate(RateProtocol::Sbs, 2, zero_xi), Error);
    RateParams bad_eta = p;
    bad_eta.eta_det = 1.2;
    CHECK_THROWS_AS(event_rate(RateProtocol::Sbs, 2, bad_eta), Error);
    RateParams bad_r0 = p;
    bad_r0.r0 = 0.0;
    CHECK_THROWS_AS(event_rate(RateProtocol::Sbs, 2, bad_r0), Error);
}

TEST_CASE("named parameter sets carry the characterised hardware values") {
    RateParams spiral = rate_preset("spiral");
    CHECK(spiral.xi == 0.17);
    CHECK(spiral.eta_ch == 0.64);
    CHECK(spiral.eta_det == 0.8);
    CHECK(spiral.eta_u == 0.9995);
    CHECK(spiral.r0 == 5.0e8);
    CHECK(spiral.k == 100);
    CHECK(spiral.m == 100);
    RateParams ring = rate_preset("ring-integrated");
    CHECK(ring.xi == 0.31);
    CHECK(ring.eta_ch == 1.0);
    CHECK(rate_preset("ring").eta_ch == 0.64);
    CHECK(rate_preset("spiral-integrated").eta_ch == 1.0);
    CHECK_THROWS_AS(rate_preset("torus"), Error);
}

TEST_CASE("ten-photon scattershot and forty-photon gaussian rates land in the band") {
    // Published one-significant-figure estimates are honored within a factor
    // of three: 0.3 Hz for the ten-photon scattershot run with spiral sources,
    // 2e-2 Hz for the forty-photon gaussian run with ring sources and on-chip
    // detection.
    double sbs = event_rate(RateProtocol::Sbs, 10, rate_preset("spiral"));
    CHECK(sbs / 0.3 > 1.0 / 3.0);
    CHECK(sbs / 0.3 < 3.0);
    double gbs = event_rate(RateProtocol::Gbs, 40, rate_preset("ring-integrated"));
    CHECK(gbs / 2.0e-2 > 1.0 / 3.0);
    CHECK(gbs / 2.0e-2 < 3.0);
}

TEST_CASE("scattershot with every source firing matches the fixed-input rate") {
    RateParams p;
    p.xi = 0.21;
    p.k = 7;
    p.m = 30;
    double th = std::tanh(0.21), sech = 1.0 / std::cosh(0.21);
    double want = p.r0 * std::pow(th * sech * p.eta_ch * p.eta_det, 14) *
                  std::pow(p.eta_u, 7.0 * 30.0);
    CHECK(rel(event_rate(RateProtocol::Sbs, 7, p), want) < 1e-12);
}

TEST_CASE("rates are linear in the repetition rate") {
    RateParams p = rate_preset("ring");
    RateParams doubled = p;
    doubled.r0 *= 2.0;
    CHECK(rel(event_rate(RateProtocol::Sbs, 6, doubled),
              2.0 * event_rate(RateProtocol::Sbs, 6, p)) < 1e-12);
    CHECK(rel(event_rate(RateProtocol::Gbs, 6, doubled),
              2.0 * event_rate(RateProtocol::Gbs, 6, p)) < 1e-12);
    CHECK(rel(qd_demux_rate(4, p, 0.65, 2.0 * 7.6e7), 2.0 * qd_demux_rate(4, p)) < 1e-12);
}

TEST_CASE("photon-number laws behind the signal-to-noise ratio") {
    // The single-mode-squeezer total is a normalized negative binomial.
    KahanSum total;
    for (int s = 0; s <= 400; ++s) total.add(sms_photon_number_probability(s, 3, 0.4));
    CHECK(std::abs(total.value() - 1.0) < 1e-10);
    CHECK(sms_photon_number_probability(3, 3, 0.4) == 0.0);
    // One source: p(2) = sech(xi) tanh^2(xi) / 2, the squeezed-vacuum value.
    double want = std::tanh(0.4) * std::tanh(0.4) / (2.0 * std::cosh(0.4));
    CHECK(rel(sms_photon_number_probability(2, 1, 0.4), want) < 1e-12);

    // Pair-contamination law: C(k, n) sech^{2k} tanh^{2n}, zero past k pairs.
    double sech2 = 1.0 / (std::cosh(0.4) * std::cosh(0.4));
    CHECK(rel(tms_pair_number_probability(0, 1, 0.4), sech2) < 1e-12);
    CHECK(rel(tms_pair_number_probability(1, 1, 0.4),
              sech2 * std::tanh(0.4) * std::tanh(0.4)) < 1e-12);
    CHECK(tms_pair_number_probability(2, 1, 0.4) == 0.0);
    CHECK(rel(tms_pair_number_probability(2, 5, 0.4),
              binomial(5, 2) * std::pow(1.0 / std::cosh(0.4), 10) * std::pow(std::tanh(0.4), 4)) <
          1e-12);
}

TEST_CASE("signal-to-noise closed form matches its printed value") {
    double want = std::pow(std::cosh(0.1), 8) / (6.0 * std::tanh(0.1) * std::tanh(0.1));
    double got = snr_gbs(1, 2, 0.1);
    CHECK(rel(got, want) < 1e-12);
    CHECK(got > 17.0);
    CHECK(got < 18.0);
    CHECK_THROWS_AS(snr_gbs(1, 2, 0.0), Error);
    CHECK_THROWS_AS(snr_gbs(0, 2, 0.1), Error);
    CHECK_THROWS_AS(snr_gbs_composed(1, 2, 0.0), Error);
}

TEST_CASE("closed form equals the first-principles composition on a grid") {
    std::vector<int> pair_grid{1, 2, 3, 5, 8};
    std::vector<int> source_grid{1, 2, 8, 25};
    std::vector<double> xi_grid{0.1, 0.5, 1.2};
    std::size_t points = 0;
    for (int n : pair_grid)
        for (int k : source_grid)
            for (double xi : xi_grid) {
                CHECK(rel(snr_gbs(n, k, xi), snr_gbs_composed(n, k, xi)) < 1e-12);
                ++points;
            }
    CHECK(points == 60);
}

TEST_CASE("strong squeezing wins the signal-to-noise race at scale") {
    for (int n : {8, 10, 12, 16, 20})
        CHECK(snr_gbs(n, 2 * n, 1.5) > snr_gbs(n, 2 * n, 0.3));
}

TEST_CASE("demultiplexed-source rates follow the switching-tree depth") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4) == 2);
    CHECK(ceil_log2(5) == 3);
    CHECK(ceil_log2(8) == 3);
    CHECK(ceil_log2(9) == 4);

    // One photon crosses no switches: the rate is just r0 p_qd (unit optics).
    RateParams clean = unit_efficiency(0.17, 100, 100);
    CHECK(rel(qd_demux_rate(1, clean, 0.65, 7.6e7, 0.995), 7.6e7 * 0.65) < 1e-12);

    // Two photons cross one switch each: demux factor 0.995^2.
    double want2 = 7.6e7 * 0.65 * 0.65 * 0.995 * 0.995;
    CHECK(rel(qd_demux_rate(2, clean, 0.65, 7.6e7, 0.995), want2) < 1e-12);

    // With real optics the full factor chain applies.
    RateParams p = rate_preset("spiral");
    double want4 = 7.6e7 * std::pow(0.65, 4) * std::pow(0.995, 4 * 2) *
                   std::pow(p.eta_u, 4.0 * p.m) * std::pow(p.eta_ch, 4) * std::pow(p.eta_det, 4);
    CHECK(rel(qd_demux_rate(4, p), want4) < 1e-12);

    // More photons always cost rate.
    for (int n = 1; n < 12; ++n) CHECK(qd_demux_rate(n, p) > qd_demux_rate(n + 1, p));
}

TEST_CASE("size sweep without interferometer loss pushes to the boundary") {
    RateParams p = rate_preset("spiral");
    p.eta_u = 1.0;
    OptimalSize best = optimal_circuit_size(RateProtocol::Sbs, 10, p, 10, 200);
    CHECK(best.k_star == 200);
    auto rate_at = [&](int k) {
        RateParams q = p;
        q.k = k;
        q.m = k;
        return event_rate(RateProtocol::Sbs, 10, q);
    };
    CHECK(rate_at(200) > rate_at(100));
    CHECK(rate_at(100) > rate_at(50));
}

TEST_CASE("size sweep is a true argmax over the range") {
    RateParams p = rate_preset("spiral");
    OptimalSize best = optimal_circuit_size(RateProtocol::Sbs, 6, p, 6, 400);
    double manual_best = -1.0;
    int manual_k = 0;
    for (int k = 6; k <= 400; ++k) {
        RateParams q = p;
        q.k = k;
        q.m = k;
        double r = event_rate(RateProtocol::Sbs, 6, q);
        if (r > manual_best) {
            manual_best = r;
            manual_k = k;
        }
    }
    CHECK(best.k_star == manual_k);
    CHECK(best.rate_star == manual_best);
    CHECK(best.k_star > 6);
    CHECK(best.k_star < 400);  // interior optimum: eta_u < 1 penalizes size

    CHECK_THROWS_AS(optimal_circuit_size(RateProtocol::Sbs, 6, p, 10, 9), Error);
    CHECK_THROWS_AS(optimal_circuit_size(RateProtocol::Sbs, 6, p, 3, 400), Error);
}

TEST_CASE("practical photon-number limits under ring sources and on-chip detection") {
    RateParams ring = rate_preset("ring-integrated");
    int gbs_limit = largest_practical_n(RateProtocol::Gbs, ring);
    CHECK(gbs_limit == 64);
    CHECK(gbs_limit >= 63);  // published estimate of about seventy, within ten percent
    CHECK(gbs_limit <= 77);
    int sbs_limit = largest_practical_n(RateProtocol::Sbs, ring);
    CHECK(sbs_limit == 40);
    CHECK_THROWS_AS(largest_practical_n(RateProtocol::Sbs, ring, 0.0), Error);
}

TEST_CASE("loss study: unit transmission leaves every sector untouched") {
    auto rows = loss_fidelity_study(4, 6, 3, {0.1, 0.3}, {1.0}, 1, 77);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.eta == 1.0);
        CHECK(std::abs(row.mean_fidelity - 1.0) < 1e-12);
    }
}

TEST_CASE("loss study: fidelity decays with loss and with squeezing") {
    const std::vector<double> xi_grid{0.15, 0.3};
    const std::vector<double> eta_grid{1.0, 0.8, 0.6, 0.4};
    for (std::uint64_t seed : {31ull, 32ull, 33ull}) {
        auto rows = loss_fidelity_study(4, 6, 3, xi_grid, eta_grid, 1, seed);
        REQUIRE(rows.size() == xi_grid.size() * eta_grid.size());
        // Rows arrive in grid order: squeezing outer, transmission inner.
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].xi == xi_grid[i / eta_grid.size()]);
            CHECK(rows[i].eta == eta_grid[i % eta_grid.size()]);
        }
        // More loss never helps, at either squeezing value.
        for (std::size_t x = 0; x < xi_grid.size(); ++x)
            for (std::size_t e = 0; e + 1 < eta_grid.size(); ++e)
                CHECK(rows[x * eta_grid.size() + e].mean_fidelity >=
                      rows[x * eta_grid.size() + e + 1].mean_fidelity - 1e-12);
        // The harder-squeezed source is hit harder by the same loss.
        for (std::size_t e = 1; e < eta_grid.size(); ++e)
            CHECK(rows[e].mean_fidelity > rows[eta_grid.size() + e].mean_fidelity);
    }
}

TEST_CASE("loss study rejects infeasible requests") {
    CHECK_THROWS_AS(loss_fidelity_study(5, 6, 3, {0.1}, {0.9}, 1, 1), Error);
    CHECK_THROWS_AS(loss_fidelity_study(6, 6, 3, {0.1}, {0.9}, 1, 1, 6), Error);
    CHECK_THROWS_AS(loss_fidelity_study(4, 6, 3, {0.1}, {1.2}, 1, 1), Error);
    CHECK_THROWS_AS(loss_fidelity_study(4, 6, 7, {0.1}, {0.9}, 1, 1), Error);
    CHECK_THROWS_AS(loss_fidelity_study(4, 6, 3, {}, {0.9}, 1, 1), Error);
    CHECK_THROWS_AS(loss_fidelity_study(4, 6, 3, {-0.1}, {0.9}, 1, 1), Error);
}
