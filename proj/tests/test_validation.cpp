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

#include <algorithm>
#include <map>
#include <random>
#include <vector>

using namespace bosim;

namespace {

/** Lookup table from a normalized distribution, keyed by occupation vector. */
std::map<std::vector<int>, double> as_table(const Distribution& dist) {
    std::map<std::vector<int>, double> table;
    for (std::size_t i = 0; i < dist.patterns.size(); ++i)
        table[dist.patterns[i].occupations()] = dist.probs[i];
    return table;
}

LikelihoodModel table_model(std::string name, std::map<std::vector<int>, double> table) {
    return LikelihoodModel{std::move(name),
                           [table = std::move(table)](const SampleRecord& s) {
                               auto it = table.find(s.output.occupations());
                               return it == table.end() ? 0.0 : it->second;
                           }};
}

std::vector<SampleRecord> wrap_standard(const std::vector<FockPattern>& draws,
                                        const FockPattern& input) {
    std::vector<SampleRecord> out;
    for (std::size_t i = 0; i < draws.size(); ++i)
        out.push_back({SampleRecord::Protocol::Standard, input, draws[i], i});
    return out;
}

/** Distinguishable-photon transfer law: permanent of the squared-modulus matrix. */
double distinguishable_prob(const ComplexMatrix& t, const FockPattern& input,
                            const FockPattern& output) {
    ComplexMatrix sub = repeat_submatrix(t, input, output);
    ComplexMatrix sq(sub.rows(), sub.cols());
    for (std::size_t r = 0; r < sub.rows(); ++r)
        for (std::size_t c = 0; c < sub.cols(); ++c) sq(r, c) = std::norm(sub(r, c));
    return permanent(sq).real() / (input.factorial_product() * output.factorial_product());
}

/** Two-mode transfer whose indistinguishable/distinguishable likelihood ratio
    is (1 + x)^2 / (1 + x^2); dyadic x values keep boundary cases exact. */
ComplexMatrix ratio_matrix(double x) {
    ComplexMatrix t(2, 2);
    t(0, 0) = Complex(0.5, 0.0);
    t(0, 1) = Complex(0.5, 0.0);
    t(1, 0) = Complex(0.5 * x, 0.0);
    t(1, 1) = Complex(0.5, 0.0);
    return t;
}

}  // namespace

TEST_CASE("identical models leave the posterior at one half") {
    LikelihoodModel m1{"a", [](const SampleRecord&) { return 0.25; }};
    LikelihoodModel m2{"b", [](const SampleRecord&) { return 0.25; }};
    std::vector<SampleRecord> samples(10);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = {SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), i};
    ValidationVerdict v = bayesian_compare(samples, m1, m2);
    REQUIRE(v.confidence_trace.size() == 10);
    for (double c : v.confidence_trace) CHECK(std::abs(c - 0.5) < 1e-15);
    CHECK(v.final_decision == ValidationVerdict::Decision::Inconclusive);
}

TEST_CASE("single sample with a 9:1 likelihood ratio gives 0.9 confidence") {
    LikelihoodModel ideal{"ideal", [](const SampleRecord&) { return 0.9; }};
    LikelihoodModel alt{"alt", [](const SampleRecord&) { return 0.1; }};
    std::vector<SampleRecord> one{
        {SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), 0}};
    ValidationVerdict v = bayesian_compare(one, ideal, alt);
    REQUIRE(v.confidence_trace.size() == 1);
    CHECK(std::abs(v.confidence_trace[0] - 0.9) < 1e-12);
    CHECK(v.final_decision == ValidationVerdict::Decision::Ideal);
}

TEST_CASE("posterior is invariant under sample reordering") {
    Rng rng(5);
    std::vector<SampleRecord> samples;
    std::vector<double> pi, pa;
    for (std::size_t i = 0; i < 40; ++i) {
        samples.push_back({SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), i});
        pi.push_back(0.1 + 0.8 * rng.uniform01());
        pa.push_back(0.1 + 0.8 * rng.uniform01());
    }
    LikelihoodModel ideal{"ideal", [&](const SampleRecord& s) { return pi[s.index]; }};
    LikelihoodModel alt{"alt", [&](const SampleRecord& s) { return pa[s.index]; }};
    double before = bayesian_compare(samples, ideal, alt).final_confidence;

    std::mt19937 shuffler(99);
    std::shuffle(samples.begin(), samples.end(), shuffler);
    double after = bayesian_compare(samples, ideal, alt).final_confidence;
    CHECK(std::abs(before - after) < 1e-12);
}

TEST_CASE("swapping the two models mirrors the confidence") {
    Rng rng(6);
    std::vector<SampleRecord> samples;
    std::vector<double> pi, pa;
    for (std::size_t i = 0; i < 25; ++i) {
        samples.push_back({SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), i});
        pi.push_back(0.1 + 0.8 * rng.uniform01());
        pa.push_back(0.1 + 0.8 * rng.uniform01());
    }
    LikelihoodModel ideal{"ideal", [&](const SampleRecord& s) { return pi[s.index]; }};
    LikelihoodModel alt{"alt", [&](const SampleRecord& s) { return pa[s.index]; }};
    ValidationVerdict fwd = bayesian_compare(samples, ideal, alt);
    ValidationVerdict rev = bayesian_compare(samples, alt, ideal);
    // Two-model posteriors are complementary at every prefix.
    REQUIRE(fwd.confidence_trace.size() == rev.confidence_trace.size());
    for (std::size_t i = 0; i < fwd.confidence_trace.size(); ++i)
        CHECK(std::abs(fwd.confidence_trace[i] + rev.confidence_trace[i] - 1.0) < 1e-12);
}

TEST_CASE("log-space accumulation matches the direct product on short runs") {
    Rng rng(7);
    std::vector<SampleRecord> samples;
    std::vector<double> pi, pa;
    for (std::size_t i = 0; i < 20; ++i) {
        samples.push_back({SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), i});
        pi.push_back(0.05 + 0.9 * rng.uniform01());
        pa.push_back(0.05 + 0.9 * rng.uniform01());
    }
    LikelihoodModel ideal{"ideal", [&](const SampleRecord& s) { return pi[s.index]; }};
    LikelihoodModel alt{"alt", [&](const SampleRecord& s) { return pa[s.index]; }};
    ValidationVerdict v = bayesian_compare(samples, ideal, alt);
    double ratio = 1.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        ratio *= pa[i] / pi[i];
        CHECK(std::abs(v.confidence_trace[i] - 1.0 / (1.0 + ratio)) < 1e-10);
    }
}

TEST_CASE("a zero ideal probability is surfaced as an error") {
    LikelihoodModel ideal{"ideal", [](const SampleRecord&) { return 0.0; }};
    LikelihoodModel alt{"alt", [](const SampleRecord&) { return 0.5; }};
    std::vector<SampleRecord> one{
        {SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), 0}};
    CHECK_THROWS_AS(bayesian_compare(one, ideal, alt), Error);
    // Zero under the alternative is clamped, not fatal.
    LikelihoodModel fine{"ideal", [](const SampleRecord&) { return 0.5; }};
    LikelihoodModel dead{"alt", [](const SampleRecord&) { return 0.0; }};
    CHECK_NOTHROW(bayesian_compare(one, fine, dead));
}

TEST_CASE("transfer samples separate the photon-identity hypotheses") {
    Interferometer interf = default_device(424);
    ComplexMatrix t = transfer_matrix(interf);
    FockPattern input({1, 1, 1, 0});
    auto dom = PatternDomain::collision_free(12, 3);

    auto ideal_law = [&](const FockPattern& k) { return prob_boson_sampling(t, input, k); };
    auto alt_law = [&](const FockPattern& k) { return distinguishable_prob(t, input, k); };
    Distribution ideal_dist = build_distribution(ideal_law, dom, true);
    Distribution alt_dist = build_distribution(alt_law, dom, true);
    LikelihoodModel ideal = table_model("transfer", as_table(ideal_dist));
    LikelihoodModel alt = table_model("distinguishable", as_table(alt_dist));

    for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
        // Ideal-sampled data must identify the ideal model...
        auto data = wrap_standard(sample(ideal_dist, seed, 400), input);
        ValidationVerdict v = bayesian_compare(data, ideal, alt);
        CHECK(v.final_confidence > 0.99);
        CHECK(v.final_decision == ValidationVerdict::Decision::Ideal);
        // ...and alternative-sampled data must reject it.
        auto bad = wrap_standard(sample(alt_dist, seed, 400), input);
        ValidationVerdict w = bayesian_compare(bad, ideal, alt);
        CHECK(w.final_confidence < 0.01);
        CHECK(w.final_decision == ValidationVerdict::Decision::Alternative);
    }
}

TEST_CASE("multi-model comparison with one alternative equals the two-model form") {
    Rng rng(8);
    std::vector<SampleRecord> samples;
    std::vector<double> pi, pa;
    for (std::size_t i = 0; i < 30; ++i) {
        samples.push_back({SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), i});
        pi.push_back(0.1 + 0.8 * rng.uniform01());
        pa.push_back(0.1 + 0.8 * rng.uniform01());
    }
    LikelihoodModel ideal{"ideal", [&](const SampleRecord& s) { return pi[s.index]; }};
    LikelihoodModel alt{"alt", [&](const SampleRecord& s) { return pa[s.index]; }};
    ValidationVerdict two = bayesian_compare(samples, ideal, alt);
    ValidationVerdict multi = bayesian_compare_multi(samples, ideal, {alt});
    REQUIRE(two.confidence_trace.size() == multi.confidence_trace.size());
    for (std::size_t i = 0; i < two.confidence_trace.size(); ++i)
        CHECK(std::abs(two.confidence_trace[i] - multi.confidence_trace[i]) < 1e-12);
}

TEST_CASE("identical alternatives scale the posterior ratio linearly") {
    LikelihoodModel ideal{"ideal", [](const SampleRecord&) { return 0.6; }};
    LikelihoodModel alt{"alt", [](const SampleRecord&) { return 0.3; }};
    std::vector<SampleRecord> samples(12);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = {SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), i};

    double c1 = bayesian_compare(samples, ideal, alt).final_confidence;
    double r = (1.0 - c1) / c1;  // the accumulated single-model likelihood ratio
    for (std::size_t copies : {2u, 3u, 5u}) {
        std::vector<LikelihoodModel> alts(copies, alt);
        ValidationVerdict v = bayesian_compare_multi(samples, ideal, alts);
        CHECK(std::abs(v.final_confidence - 1.0 / (1.0 + copies * r)) < 1e-12);
        // With equal ratios the lower bound is tight.
        CHECK(std::abs(v.multi_lower_bound - v.final_confidence) < 1e-12);
        CHECK(v.multi_upper_bound >= v.final_confidence - 1e-15);
    }
}

TEST_CASE("posterior bounds bracket the simultaneous confidence") {
    Rng rng(14);
    std::vector<SampleRecord> samples;
    for (std::size_t i = 0; i < 50; ++i)
        samples.push_back({SampleRecord::Protocol::Standard, FockPattern({1}), FockPattern({1}), i});
    std::vector<double> pi, p1, p2, p3;
    for (std::size_t i = 0; i < 50; ++i) {
        pi.push_back(0.2 + 0.6 * rng.uniform01());
        p1.push_back(0.2 + 0.6 * rng.uniform01());
        p2.push_back(0.2 + 0.6 * rng.uniform01());
        p3.push_back(0.2 + 0.6 * rng.uniform01());
    }
    LikelihoodModel ideal{"ideal", [&](const SampleRecord& s) { return pi[s.index]; }};
    std::vector<LikelihoodModel> alts{
        {"a", [&](const SampleRecord& s) { return p1[s.index]; }},
        {"b", [&](const SampleRecord& s) { return p2[s.index]; }},
        {"c", [&](const SampleRecord& s) { return p3[s.index]; }}};
    ValidationVerdict v = bayesian_compare_multi(samples, ideal, alts);
    CHECK(v.multi_lower_bound <= v.final_confidence + 1e-12);
    CHECK(v.final_confidence <= v.multi_upper_bound + 1e-12);
}

TEST_CASE("gaussian data rejects all four adversarial models simultaneously") {
    std::vector<std::size_t> all{0, 1};
    Interferometer interf{haar_random_unitary(2, 33), all};
    std::vector<double> xi{0.3, 0.2};
    SqueezerBank bank(xi);
    GaussianState st = build_sigma_q(interf, bank);
    auto dom = PatternDomain::fixed_total(2, 2);
    Distribution ideal_dist = build_distribution(gbs_law(st, 2), dom, true);

    double nbar = bank.mean_photons() / 2.0;
    auto thermal_spec = ClassicalModelSpec::thermal({nbar, nbar});
    Distribution thermal_dist = build_distribution(
        [&](const FockPattern& k) { return prob_thermal(thermal_spec, interf, k); }, dom, true);
    double amp = std::sqrt(nbar);
    auto coherent_spec = ClassicalModelSpec::coherent({Complex(amp, 0.0), Complex(amp, 0.0)});
    Distribution coherent_dist = build_distribution(
        [&](const FockPattern& k) { return prob_coherent(coherent_spec, interf, k); }, dom, true);
    Distribution uniform_dist =
        build_distribution([&](const FockPattern&) { return prob_uniform(dom); }, dom, true);

    LikelihoodModel ideal = table_model("gaussian", as_table(ideal_dist));
    std::vector<LikelihoodModel> alts{table_model("thermal", as_table(thermal_dist)),
                                      table_model("coherent", as_table(coherent_dist)),
                                      table_model("uniform", as_table(uniform_dist))};

    auto draws = sample(ideal_dist, 2024, 600);
    std::vector<SampleRecord> data;
    for (std::size_t i = 0; i < draws.size(); ++i)
        data.push_back({SampleRecord::Protocol::Gbs, FockPattern(), draws[i], i});

    ValidationVerdict multi = bayesian_compare_multi(data, ideal, alts);
    bool all_pairwise = true;
    for (const auto& alt : alts) {
        ValidationVerdict pair = bayesian_compare(data, ideal, alt);
        if (pair.final_confidence <= 0.999) all_pairwise = false;
    }
    CHECK(all_pairwise);
    CHECK(multi.final_confidence > 0.999);
    CHECK(multi.final_decision == ValidationVerdict::Decision::Ideal);
}

TEST_CASE("row-norm counter: single-sample updates and the tie rule") {
    ComplexMatrix t(4, 4);
    for (std::size_t i = 0; i < 4; ++i) t(i, i) = Complex(1.0, 0.0);
    std::vector<SampleRecord> one{{SampleRecord::Protocol::Standard, FockPattern({1, 0, 0, 0}),
                                   FockPattern({1, 0, 0, 0}), 0}};
    // R = 1 above the n = 1 threshold 1/4: counter moves up.
    ValidationVerdict up = rownorm_test(one, t, 4, 1);
    REQUIRE(up.counter_trace.size() == 1);
    CHECK(up.counter_trace[0] == 1);

    // Row norm exactly at the threshold: the tie goes down.
    ComplexMatrix tie(4, 4);
    tie(0, 0) = Complex(0.5, 0.0);
    ValidationVerdict down = rownorm_test(one, tie, 4, 1);
    REQUIRE(down.counter_trace.size() == 1);
    CHECK(down.counter_trace[0] == -1);
}

TEST_CASE("row-norm counter separates transfer samples from uniform noise") {
    Interferometer interf = default_device(909);
    ComplexMatrix t = transfer_matrix(interf);
    FockPattern input({1, 1, 1, 0});
    auto dom = PatternDomain::collision_free(12, 3);
    auto law = [&](const FockPattern& k) { return prob_boson_sampling(t, input, k); };
    Distribution ideal_dist = build_distribution(law, dom, true);
    Distribution uniform_dist =
        build_distribution([&](const FockPattern&) { return prob_uniform(dom); }, dom, true);

    auto ideal_samples = wrap_standard(sample(ideal_dist, 5150, 1000), input);
    ValidationVerdict v = rownorm_test(ideal_samples, t, 12, 3);
    CHECK(v.counter_trace.back() > 0);
    CHECK(v.final_decision == ValidationVerdict::Decision::Ideal);

    auto noise_samples = wrap_standard(sample(uniform_dist, 5151, 1000), input);
    ValidationVerdict w = rownorm_test(noise_samples, t, 12, 3);
    CHECK(w.counter_trace.back() < 0);
    CHECK(w.final_decision == ValidationVerdict::Decision::Alternative);
}

TEST_CASE("likelihood-ratio counter follows the five printed branches") {
    const SampleRecord pair{SampleRecord::Protocol::Standard, FockPattern({1, 1}),
                            FockPattern({1, 1}), 0};
    // x = 1 gives L = 2 exactly: the closed lower edge of the +2 branch.
    // x = 3 gives L = 1.6 (+1), x = 0 gives L = 1 (middle), x = -0.2 gives
    // L ~ 0.615 (-1), x = -0.5 gives L = 0.2 (-2), x = -1 cancels to L = 0 (-2).
    std::vector<std::pair<double, long>> cases{
        {1.0, 2}, {3.0, 1}, {0.0, 0}, {-0.2, -1}, {-0.5, -2}, {-1.0, -2}};
    for (const auto& [x, delta] : cases) {
        ValidationVerdict v = likelihood_ratio_test({pair}, ratio_matrix(x), 0.75, 2.0);
        REQUIRE(v.counter_trace.size() == 1);
        CHECK(v.counter_trace[0] == delta);
    }

    // Fully bunched outputs have L = n! independent of the matrix entries:
    // two photons in one mode sit exactly on the +2 edge (dyadic real entries
    // keep the ratio exact), three photons go far past it.
    SampleRecord bunched2{SampleRecord::Protocol::Standard, FockPattern({1, 1}),
                          FockPattern({2, 0}), 0};
    CHECK(likelihood_ratio_test({bunched2}, ratio_matrix(3.0), 0.75, 2.0).counter_trace[0] == 2);
    ComplexMatrix t3(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) t3(r, c) = Complex(0.3 + 0.1 * r, 0.2 * c);
    SampleRecord bunched3{SampleRecord::Protocol::Standard, FockPattern({1, 1, 1}),
                          FockPattern({3, 0, 0}), 0};
    CHECK(likelihood_ratio_test({bunched3}, t3, 0.75, 2.0).counter_trace[0] == 2);

    // Counters accumulate across a sequence.
    std::vector<SampleRecord> seq(3, pair);
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i].index = i;
    ValidationVerdict acc = likelihood_ratio_test(seq, ratio_matrix(3.0), 0.75, 2.0);
    REQUIRE(acc.counter_trace.size() == 3);
    CHECK(acc.counter_trace[2] == 3);
}

TEST_CASE("likelihood-ratio counter identifies indistinguishable transfer data") {
    Interferometer interf = default_device(313);
    ComplexMatrix t = transfer_matrix(interf);
    FockPattern input({1, 1, 1, 0});
    auto dom = PatternDomain::collision_free(12, 3);
    auto law = [&](const FockPattern& k) { return prob_boson_sampling(t, input, k); };
    Distribution ideal_dist = build_distribution(law, dom, true);
    auto alt_law = [&](const FockPattern& k) { return distinguishable_prob(t, input, k); };
    Distribution alt_dist = build_distribution(alt_law, dom, true);

    auto good = wrap_standard(sample(ideal_dist, 77, 1000), input);
    ValidationVerdict v = likelihood_ratio_test(good, t, 0.75, 2.0);
    CHECK(v.counter_trace.back() > 0);
    CHECK(v.final_decision == ValidationVerdict::Decision::Ideal);

    auto bad = wrap_standard(sample(alt_dist, 78, 1000), input);
    ValidationVerdict w = likelihood_ratio_test(bad, t, 0.75, 2.0);
    CHECK(w.counter_trace.back() < 0);
    CHECK(w.final_decision == ValidationVerdict::Decision::Alternative);
}

TEST_CASE("likelihood-ratio test rejects a vanishing distinguishable likelihood") {
    ComplexMatrix t(2, 2);  // first row entirely dark
    t(1, 0) = Complex(0.7, 0.0);
    t(1, 1) = Complex(0.7, 0.0);
    std::vector<SampleRecord> one{
        {SampleRecord::Protocol::Standard, FockPattern({1, 1}), FockPattern({1, 1}), 0}};
    CHECK_THROWS_AS(likelihood_ratio_test(one, t, 0.75, 2.0), Error);
    CHECK_THROWS_AS(likelihood_ratio_test(one, t, 1.5, 2.0), Error);  // bad control parameters
}

TEST_CASE("small counters inside the dead zone are inconclusive") {
    // 100 middle-branch samples leave the counter at zero: |0| <= sqrt(100).
    SampleRecord flat{SampleRecord::Protocol::Standard, FockPattern({1, 1}),
                      FockPattern({1, 1}), 0};
    std::vector<SampleRecord> samples(100, flat);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i].index = i;
    ValidationVerdict v = likelihood_ratio_test(samples, ratio_matrix(0.0), 0.75, 2.0);
    CHECK(v.counter_trace.back() == 0);
    CHECK(v.final_decision == ValidationVerdict::Decision::Inconclusive);

    // A counter at exactly +sqrt(N) is still inside the dead zone; one more
    // upward step flips the call to ideal.  Diagonal transfer: detecting mode 0
    // (row norm 1 > 1/4) moves up, detecting mode 1 (0.01 < 1/4) moves down.
    ComplexMatrix diag(4, 4);
    diag(0, 0) = Complex(1.0, 0.0);
    diag(1, 1) = Complex(0.1, 0.0);
    diag(2, 2) = Complex(1.0, 0.0);
    diag(3, 3) = Complex(1.0, 0.0);
    auto one_mode = [](std::size_t q, std::size_t index) {
        std::vector<int> occ(4, 0);
        occ[q] = 1;
        return SampleRecord{SampleRecord::Protocol::Standard, FockPattern(occ),
                            FockPattern(occ), index};
    };
    std::vector<SampleRecord> nine;
    for (std::size_t i = 0; i < 6; ++i) nine.push_back(one_mode(0, i));
    for (std::size_t i = 6; i < 9; ++i) nine.push_back(one_mode(1, i));
    ValidationVerdict at_edge = rownorm_test(nine, diag, 4, 1);
    CHECK(at_edge.counter_trace.back() == 3);  // == sqrt(9)
    CHECK(at_edge.final_decision == ValidationVerdict::Decision::Inconclusive);

    nine[8] = one_mode(2, 8);  // 7 up, 2 down: counter 5 > sqrt(9)
    ValidationVerdict past_edge = rownorm_test(nine, diag, 4, 1);
    CHECK(past_edge.counter_trace.back() == 5);
    CHECK(past_edge.final_decision == ValidationVerdict::Decision::Ideal);
}
