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

#ifndef BOSIM_VALIDATION_HPP
#define BOSIM_VALIDATION_HPP

#include <functional>
#include <limits>

#include "distributions.hpp"

namespace bosim {

/** @brief One recorded experiment event: protocol, herald/input pattern, detection pattern. */
struct SampleRecord {
    enum class Protocol { Standard, Sbs, Gbs };

    Protocol protocol = Protocol::Standard;
    FockPattern herald;  // input pattern for the fixed-input protocol, herald for scattershot
    FockPattern output;
    std::size_t index = 0;

    void validate() const {
        if (protocol == Protocol::Sbs)
            require(herald.total() == output.total(),
                    "SampleRecord: scattershot herald and output photon numbers must match");
        if (protocol == Protocol::Gbs)
            require(herald.modes() == 0 || herald.total() == 0,
                    "SampleRecord: no herald pattern is defined for the Gaussian protocol");
    }
};

/** @brief A named per-sample likelihood, already conditioned on its pattern domain. */
struct LikelihoodModel {
    std::string name;
    std::function<double(const SampleRecord&)> prob;
};

/** @brief Outcome of a validation protocol: traces plus the final call. */
struct ValidationVerdict {
    enum class Decision { Ideal, Alternative, Inconclusive };

    std::vector<double> confidence_trace;  // Bayesian protocols
    std::vector<long> counter_trace;       // counter protocols
    Decision final_decision = Decision::Inconclusive;
    double final_confidence = 0.5;
    double multi_lower_bound = 0.0;  // two-sided bound of the multi-model posterior
    double multi_upper_bound = 1.0;

    static const char* decision_name(Decision d) {
        switch (d) {
            case Decision::Ideal: return "ideal";
            case Decision::Alternative: return "alternative";
            case Decision::Inconclusive: return "inconclusive";
        }
        return "inconclusive";
    }
};

namespace detail {

/** @brief Log-likelihood of one sample with the underflow clamp; exact zero is rejected
    for the ideal model (undefined likelihood) and clamped for alternatives. */
inline double clamped_log_prob(double p, bool ideal_model) {
    require(std::isfinite(p) && p >= 0.0, "validation: model returned an invalid probability");
    if (p == 0.0) {
        require(!ideal_model,
                "validation: sample has exactly zero probability under the ideal model");
        p = 1e-300;
    }
    return std::log(std::max(p, 1e-300));
}

/** @brief Sign-of-counter decision with a sqrt(N) dead zone. */
inline ValidationVerdict::Decision counter_decision(long counter, std::size_t samples) {
    double margin = std::sqrt(static_cast<double>(samples));
    if (std::abs(static_cast<double>(counter)) <= margin)
        return ValidationVerdict::Decision::Inconclusive;
    return counter > 0 ? ValidationVerdict::Decision::Ideal
                       : ValidationVerdict::Decision::Alternative;
}

}  // namespace detail

/**
@brief Dynamic two-model Bayesian comparison with uniform prior.

After each sample the posterior probability of the ideal model is
  p = 1 / (1 + prod_i p_alt(x_i) / p_ideal(x_i)),
accumulated in log-space with per-sample clamping at 1e-300. Samples with
exactly zero ideal probability are surfaced as an error (the likelihood is
undefined), never skipped.
*/
inline ValidationVerdict bayesian_compare(const std::vector<SampleRecord>& samples,
                                          const LikelihoodModel& ideal,
                                          const LikelihoodModel& alt) {
    ValidationVerdict v;
    KahanSum log_ratio;  // sum of log(p_alt / p_ideal)
    for (const SampleRecord& s : samples) {
        s.validate();
        double li = detail::clamped_log_prob(ideal.prob(s), true);
        double la = detail::clamped_log_prob(alt.prob(s), false);
        log_ratio.add(la - li);
        double lr = log_ratio.value();
        double conf = (lr > 700.0) ? 0.0 : 1.0 / (1.0 + std::exp(lr));
        v.confidence_trace.push_back(conf);
    }
    v.final_confidence = v.confidence_trace.empty() ? 0.5 : v.confidence_trace.back();
    if (v.final_confidence > 0.5 + 1e-12)
        v.final_decision = ValidationVerdict::Decision::Ideal;
    else if (v.final_confidence < 0.5 - 1e-12)
        v.final_decision = ValidationVerdict::Decision::Alternative;
    else
        v.final_decision = ValidationVerdict::Decision::Inconclusive;
    return v;
}

/**
@brief Simultaneous Bayesian comparison against several alternatives with a
uniform prior over all models:  p(ideal | D) = 1 / (1 + sum_k r_k)  with
r_k = p(D | M_k) / p(D | ideal). The verdict also carries the two-sided bound
[1 / (1 + K r_max), 1 / (1 + r_max)] implied by the largest single ratio.
*/
inline ValidationVerdict bayesian_compare_multi(const std::vector<SampleRecord>& samples,
                                                const LikelihoodModel& ideal,
                                                const std::vector<LikelihoodModel>& alts) {
    require(!alts.empty(), "bayesian_compare_multi: need at least one alternative model");
    ValidationVerdict v;
    std::vector<KahanSum> log_ratios(alts.size());
    for (const SampleRecord& s : samples) {
        s.validate();
        double li = detail::clamped_log_prob(ideal.prob(s), true);
        for (std::size_t k = 0; k < alts.size(); ++k)
            log_ratios[k].add(detail::clamped_log_prob(alts[k].prob(s), false) - li);

        // Stable 1 / (1 + sum_k exp(lr_k)) via the log-sum-exp shift.
        double mx = log_ratios[0].value();
        for (const KahanSum& ks : log_ratios) mx = std::max(mx, ks.value());
        double conf;
        if (mx > 700.0) {
            conf = 0.0;
        } else {
            double shifted = 0.0;
            for (const KahanSum& ks : log_ratios) shifted += std::exp(ks.value() - mx);
            double lse = mx + std::log(shifted);
            conf = (lse > 700.0) ? 0.0 : 1.0 / (1.0 + std::exp(lse));
        }
        v.confidence_trace.push_back(conf);
    }
    v.final_confidence = v.confidence_trace.empty() ? 0.5 : v.confidence_trace.back();

    double max_lr = log_ratios[0].value();
    for (const KahanSum& ks : log_ratios) max_lr = std::max(max_lr, ks.value());
    double r_max = (max_lr > 700.0) ? std::numeric_limits<double>::infinity() : std::exp(max_lr);
    double kcount = static_cast<double>(alts.size());
    v.multi_lower_bound = std::isinf(r_max) ? 0.0 : 1.0 / (1.0 + kcount * r_max);
    v.multi_upper_bound = std::isinf(r_max) ? 0.0 : 1.0 / (1.0 + r_max);

    if (v.final_confidence > 0.5 + 1e-12)
        v.final_decision = ValidationVerdict::Decision::Ideal;
    else if (v.final_confidence < 0.5 - 1e-12)
        v.final_decision = ValidationVerdict::Decision::Alternative;
    else
        v.final_decision = ValidationVerdict::Decision::Inconclusive;
    return v;
}

/**
@brief Row-norm estimator test, a permanent-free sanity check against uniform
samplers.

For each sample the statistic
  R = prod_{detected outputs q} sum_{occupied inputs p} |T(p, q)|^2
is compared against the domain scale (n/m)^n: the counter moves +1 when R
exceeds it and -1 otherwise (ties included). Fock-state samplers drift the
counter up, uniform samplers drift it down; |counter| <= sqrt(samples) is
declared inconclusive.
*/
inline ValidationVerdict rownorm_test(const std::vector<SampleRecord>& samples,
                                      const ComplexMatrix& t, std::size_t m, int n) {
    require(m >= 1 && n >= 1, "rownorm_test: need at least one mode and one photon");
    const double threshold = std::pow(static_cast<double>(n) / static_cast<double>(m), n);
    ValidationVerdict v;
    long counter = 0;
    for (const SampleRecord& s : samples) {
        s.validate();
        require(s.herald.modes() == t.rows() && s.output.modes() == t.cols(),
                "rownorm_test: sample patterns must match the transfer matrix");
        double r = 1.0;
        for (std::size_t q = 0; q < s.output.modes(); ++q) {
            if (s.output[q] == 0) continue;
            double row = 0.0;
            for (std::size_t p = 0; p < s.herald.modes(); ++p)
                if (s.herald[p] > 0) row += s.herald[p] * std::norm(t(p, q));
            for (int rep = 0; rep < s.output[q]; ++rep) r *= row;
        }
        counter += (r > threshold) ? 1 : -1;
        v.counter_trace.push_back(counter);
    }
    v.final_decision = detail::counter_decision(counter, samples.size());
    return v;
}

/**
@brief Likelihood-ratio counter test between indistinguishable and
distinguishable photon hypotheses.

Per sample, L = |Per(T_{j,k})|^2 / Per(|T_{j,k}|^2) (elementwise squared
modulus in the denominator) and the counter moves by the five-step rule with
control parameters a1 < 1 < a2:
  +2 for L >= a2, +1 for 1/a1 <= L < a2, 0 for a1 < L < 1/a1,
  -1 for 1/a2 < L <= a1, -2 for L <= 1/a2.
*/
inline ValidationVerdict likelihood_ratio_test(const std::vector<SampleRecord>& samples,
                                               const ComplexMatrix& t, double a1 = 0.75,
                                               double a2 = 2.0) {
    require(a1 > 0.0 && a1 < 1.0 && a2 > 1.0, "likelihood_ratio_test: need 0 < a1 < 1 < a2");
    ValidationVerdict v;
    long counter = 0;
    for (const SampleRecord& s : samples) {
        s.validate();
        require(s.herald.modes() == t.rows() && s.output.modes() == t.cols(),
                "likelihood_ratio_test: sample patterns must match the transfer matrix");
        require(s.herald.total() == s.output.total() && s.output.total() <= kPermanentCap,
                "likelihood_ratio_test: photon numbers must match and stay within the cap");
        ComplexMatrix sub =
            repeat_submatrix(t, s.herald, s.output);
        double p_ind = std::norm(permanent(sub));
        ComplexMatrix sq(sub.rows(), sub.cols());
        for (std::size_t r = 0; r < sub.rows(); ++r)
            for (std::size_t c = 0; c < sub.cols(); ++c) sq(r, c) = std::norm(sub(r, c));
        double p_dist = permanent(sq).real();
        require(p_dist > 0.0, "likelihood_ratio_test: distinguishable likelihood is zero");
        double l = p_ind / p_dist;

        if (l >= a2)
            counter += 2;
        else if (l >= 1.0 / a1)
            counter += 1;
        else if (l > a1)
            counter += 0;
        else if (l > 1.0 / a2)
            counter -= 1;
        else
            counter -= 2;
        v.counter_trace.push_back(counter);
    }
    v.final_decision = detail::counter_decision(counter, samples.size());
    return v;
}

}  // namespace bosim

#endif  // BOSIM_VALIDATION_HPP
