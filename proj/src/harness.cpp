// SPDX-License-Identifier: Apache-2.0

#include "critickit/harness.hpp"

#include <algorithm>
#include <chrono>

#include "critickit/errors.hpp"
#include "critickit/parallel.hpp"
#include "critickit/reward.hpp"

namespace critickit {

namespace {

constexpr double kCritical05 = 3.841;
constexpr double kCritical01 = 6.635;
constexpr double kCritical001 = 10.828;

} // namespace

std::string_view to_string(SignificanceBand b) noexcept {
    switch (b) {
    case SignificanceBand::p_lt_0_05: return "p<0.05";
    case SignificanceBand::p_lt_0_01: return "p<0.01";
    case SignificanceBand::p_lt_0_001: return "p<0.001";
    case SignificanceBand::not_significant: break;
    }
    return "not_significant";
}

SignificanceBand significance_band(double chi2) noexcept {
    if (chi2 > kCritical001) return SignificanceBand::p_lt_0_001;
    if (chi2 > kCritical01) return SignificanceBand::p_lt_0_01;
    if (chi2 > kCritical05) return SignificanceBand::p_lt_0_05;
    return SignificanceBand::not_significant;
}

ChiSquareResult chi_square(const Contingency2x2& c) {
    if (c.n11 < 0 || c.n10 < 0 || c.n01 < 0 || c.n00 < 0) throw ConfigError("contingency counts must be nonnegative");
    const double total = static_cast<double>(c.total());
    if (total < 1) throw ConfigError("contingency table is empty");
    const double rows[2] = {static_cast<double>(c.n11 + c.n10), static_cast<double>(c.n01 + c.n00)};
    const double cols[2] = {static_cast<double>(c.n11 + c.n01), static_cast<double>(c.n10 + c.n00)};
    if (rows[0] == 0 || rows[1] == 0 || cols[0] == 0 || cols[1] == 0) throw ConfigError("degenerate margin");
    const double observed[2][2] = {{static_cast<double>(c.n11), static_cast<double>(c.n10)},
                                   {static_cast<double>(c.n01), static_cast<double>(c.n00)}};
    double chi2 = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int k = 0; k < 2; ++k) {
            const double expected = rows[r] * cols[k] / total;
            const double diff = observed[r][k] - expected;
            chi2 += diff * diff / expected;
        }
    }
    return ChiSquareResult{chi2, significance_band(chi2)};
}

JudgeRecord judge_pair(const PreferenceTuple& tuple, const Judge& judge, bool swap) {
    JudgeRecord rec;
    rec.tuple_id = tuple.id;
    rec.subset = tuple.prompt.subset_tag.value_or(kUntaggedSubset);
    rec.swapped = swap;
    const CandidateResponse& first = swap ? tuple.response_b : tuple.response_a;
    const CandidateResponse& second = swap ? tuple.response_a : tuple.response_b;
    const JudgeRequest request = make_judge_request(tuple.prompt, first, second);

    const auto start = std::chrono::steady_clock::now();
    std::string raw;
    try {
        raw = judge(request);
    } catch (const TransportError& e) {
        rec.failed = true;
        rec.failure_reason = e.what();
    }
    rec.latency_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (rec.failed) return rec;

    rec.trace = parse_trace(std::move(raw));
    rec.verdict = unswapped(parse_verdict(rec.trace), swap);
    rec.correct = matches(rec.verdict, tuple.preference) ? 1 : 0;
    if (tuple.gold_answer) {
        const AnswerKind kind = infer_answer_kind(*tuple.gold_answer);
        rec.self_pred_correct = static_cast<int>(self_prediction_reward(rec.trace, *tuple.gold_answer, kind));
    }
    return rec;
}

JudgeReport aggregate(std::vector<JudgeRecord> records, bool swap_both_orders) {
    std::stable_sort(records.begin(), records.end(), [](const JudgeRecord& a, const JudgeRecord& b) {
        if (a.tuple_id != b.tuple_id) return a.tuple_id < b.tuple_id;
        return !a.swapped && b.swapped;
    });

    JudgeReport report;
    report.num_records = records.size();
    std::map<std::string, double> subset_score;
    double total_score = 0.0;
    std::size_t total_items = 0;
    std::size_t consistency_items = 0;
    std::size_t consistent = 0;
    Contingency2x2 table;
    bool any_self_pred = false;

    for (std::size_t i = 0; i < records.size();) {
        std::size_t j = i;
        while (j < records.size() && records[j].tuple_id == records[i].tuple_id) ++j;
        double score = 0.0;
        std::size_t usable = 0;
        std::optional<Verdict> straight;
        std::optional<Verdict> swapped;
        for (std::size_t k = i; k < j; ++k) {
            const JudgeRecord& r = records[k];
            if (r.failed) {
                ++report.num_failed;
                continue;
            }
            ++usable;
            score += r.correct;
            if (r.verdict == Verdict::undecided) ++report.num_undecided;
            (r.swapped ? swapped : straight) = r.verdict;
            if (r.self_pred_correct) {
                any_self_pred = true;
                const bool sp = *r.self_pred_correct == 1;
                const bool jc = r.correct == 1;
                (sp ? (jc ? table.n11 : table.n10) : (jc ? table.n01 : table.n00)) += 1;
            }
        }
        if (usable > 0) {
            score /= static_cast<double>(usable);
            const std::string& subset = records[i].subset;
            subset_score[subset] += score;
            report.counts[subset] += 1;
            total_score += score;
            ++total_items;
        }
        if (straight && swapped) {
            ++consistency_items;
            if (decided(*straight) && *straight == *swapped) ++consistent;
        }
        i = j;
    }

    if (total_items == 0) throw ConfigError("no judged items to aggregate");
    report.overall_accuracy = total_score / static_cast<double>(total_items);
    double macro_sum = 0.0;
    for (const auto& [subset, count] : report.counts) {
        const double acc = subset_score[subset] / static_cast<double>(count);
        report.per_subset[subset] = acc;
        macro_sum += acc;
    }
    report.macro_accuracy = macro_sum / static_cast<double>(report.counts.size());
    if (swap_both_orders && consistency_items > 0)
        report.swap_consistency = static_cast<double>(consistent) / static_cast<double>(consistency_items);
    if (any_self_pred) {
        report.self_prediction = table;
        try {
            report.self_prediction_chi2 = chi_square(table);
        } catch (const ConfigError&) {
            // Degenerate margins: the association test is undefined, the table is still reported.
        }
    }
    return report;
}

Evaluation evaluate_benchmark(const std::vector<PreferenceTuple>& tuples, const Judge& judge,
                              const EvalConfig& config) {
    if (tuples.empty()) throw ConfigError("benchmark has no tuples");
    const std::size_t per_tuple = config.swap_both_orders ? 2 : 1;
    std::vector<JudgeRecord> records(tuples.size() * per_tuple);
    parallel_for(records.size(), config.parallelism, [&](std::size_t slot) {
        const PreferenceTuple& t = tuples[slot / per_tuple];
        const bool second_pass = slot % per_tuple == 1;
        const bool swap = second_pass != config.present_swapped;
        JudgeRecord rec = judge_pair(t, judge, swap);
        if (rec.failed && config.strict)
            throw TransportError("judge failed on tuple " + t.id + ": " + rec.failure_reason);
        records[slot] = std::move(rec);
    });
    JudgeReport report = aggregate(records, config.swap_both_orders);
    return Evaluation{std::move(report), std::move(records)};
}

nlohmann::json to_json(const JudgeRecord& r, bool include_latency) {
    nlohmann::json j{{"tuple_id", r.tuple_id},
                     {"subset", r.subset},
                     {"swapped", r.swapped},
                     {"verdict", std::string(to_string(r.verdict))},
                     {"correct", r.correct},
                     {"self_pred_correct", r.self_pred_correct ? nlohmann::json(*r.self_pred_correct) : nlohmann::json()},
                     {"failed", r.failed}};
    if (r.failed) j["failure_reason"] = r.failure_reason;
    else j["trace"] = to_json(r.trace);
    if (include_latency) j["latency_ms"] = r.latency_ms;
    return j;
}

nlohmann::json to_json(const JudgeReport& r) {
    nlohmann::json j{{"overall_accuracy", r.overall_accuracy},
                     {"macro_accuracy", r.macro_accuracy},
                     {"per_subset", r.per_subset},
                     {"counts", r.counts},
                     {"swap_consistency", r.swap_consistency ? nlohmann::json(*r.swap_consistency) : nlohmann::json()},
                     {"num_records", r.num_records},
                     {"num_failed", r.num_failed},
                     {"num_undecided", r.num_undecided}};
    if (r.self_prediction) {
        const auto& t = *r.self_prediction;
        nlohmann::json sp{{"n11", t.n11}, {"n10", t.n10}, {"n01", t.n01}, {"n00", t.n00}};
        if (r.self_prediction_chi2) {
            sp["chi2"] = r.self_prediction_chi2->chi2;
            sp["band"] = std::string(to_string(r.self_prediction_chi2->band));
        }
        j["self_prediction"] = sp;
    }
    return j;
}

} // namespace critickit
