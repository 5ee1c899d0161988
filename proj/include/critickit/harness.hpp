// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file harness.hpp
/// @brief Pairwise-judge benchmark evaluation and the self-prediction association test.
///
/// Accuracy conventions:
///  - an undecided verdict is incorrect and stays in the denominator;
///  - with both presentation orders, an item scores the mean of its two records;
///  - records whose judge call failed are excluded (lenient mode only);
///  - overall = sum(item scores) / items, macro = unweighted mean of per-subset accuracy.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "critickit/judge.hpp"
#include "critickit/trace.hpp"
#include "critickit/types.hpp"

namespace critickit {

inline constexpr const char* kUntaggedSubset = "untagged";

struct JudgeRecord {
    std::string tuple_id;
    std::string subset;
    bool swapped = false;
    Verdict verdict = Verdict::undecided;  // in the tuple's original A/B labels
    std::optional<int> self_pred_correct;
    int correct = 0;
    double latency_ms = 0.0;
    CriticTrace trace;
    bool failed = false;
    std::string failure_reason;
};

/// Judges one tuple. With @p swap the judge sees response_b as "Response 1" and the verdict
/// is mapped back to the original labels. TransportError from the judge yields a failed record.
JudgeRecord judge_pair(const PreferenceTuple& tuple, const Judge& judge, bool swap);

struct EvalConfig {
    bool swap_both_orders = false;
    bool strict = false;
    std::size_t parallelism = 1;
    // Present every tuple in swapped order only (used for label-swap symmetry checks).
    bool present_swapped = false;
};

struct Contingency2x2 {
    // Rows: self-prediction correct / incorrect. Columns: judgment correct / incorrect.
    long n11 = 0;
    long n10 = 0;
    long n01 = 0;
    long n00 = 0;

    long total() const noexcept { return n11 + n10 + n01 + n00; }
    bool operator==(const Contingency2x2&) const = default;
};

enum class SignificanceBand { not_significant, p_lt_0_05, p_lt_0_01, p_lt_0_001 };

std::string_view to_string(SignificanceBand b) noexcept;

struct ChiSquareResult {
    double chi2 = 0.0;
    SignificanceBand band = SignificanceBand::not_significant;
};

/// Pearson chi-square without continuity correction, banded by the 1-dof critical values
/// 3.841 / 6.635 / 10.828. Throws ConfigError("degenerate margin") on an empty row or column.
ChiSquareResult chi_square(const Contingency2x2& c);

SignificanceBand significance_band(double chi2) noexcept;

struct JudgeReport {
    double overall_accuracy = 0.0;
    std::map<std::string, double> per_subset;
    double macro_accuracy = 0.0;
    std::optional<double> swap_consistency;
    std::map<std::string, std::size_t> counts;
    std::size_t num_records = 0;
    std::size_t num_failed = 0;
    std::size_t num_undecided = 0;
    std::optional<Contingency2x2> self_prediction;
    std::optional<ChiSquareResult> self_prediction_chi2;
};

/// Deterministic fold over @p records (order-independent: records are sorted by tuple id first).
/// Throws ConfigError when no item has a usable record.
JudgeReport aggregate(std::vector<JudgeRecord> records, bool swap_both_orders);

struct Evaluation {
    JudgeReport report;
    std::vector<JudgeRecord> records;  // input order; two per tuple when swapping
};

/// Throws ConfigError on empty input and TransportError in strict mode when any judge call fails.
Evaluation evaluate_benchmark(const std::vector<PreferenceTuple>& tuples, const Judge& judge,
                              const EvalConfig& config);

nlohmann::json to_json(const JudgeRecord& r, bool include_latency = false);
nlohmann::json to_json(const JudgeReport& r);

} // namespace critickit
