// SPDX-License-Identifier: Apache-2.0

#include "critickit/reward.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "critickit/errors.hpp"

namespace critickit {

namespace {

constexpr double kDecimalGrid = 1e12;

double snap(double x) { return std::round(x * kDecimalGrid) / kDecimalGrid; }

std::string fold_case(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

bool answers_match(std::string_view pred, std::string_view gold, AnswerKind kind) {
    if (kind == AnswerKind::multiple_choice) {
        auto p = first_option_letter(pred);
        auto g = first_option_letter(gold);
        return p && g && *p == *g;
    }
    const std::string p = fold_case(collapse_whitespace(pred));
    return !p.empty() && p == fold_case(collapse_whitespace(gold));
}

double stage1_reward(const std::optional<std::string>& pred, std::string_view gold, AnswerKind kind) {
    if (!pred) return 0.0;
    return answers_match(*pred, gold, kind) ? 1.0 : 0.0;
}

double self_prediction_reward(const CriticTrace& trace, std::string_view gold, AnswerKind kind) {
    return stage1_reward(extract_prediction(trace, kind), gold, kind);
}

double critic_reward(const CriticTrace& trace, Preference preference) {
    return matches(parse_verdict(trace), preference) ? 1.0 : 0.0;
}

RewardBreakdown combine_rewards(double r_sp, double r_crit, double r_form, const RewardWeights& weights) {
    RewardBreakdown b;
    b.r_sp = r_sp;
    b.r_crit = r_crit;
    b.r_form = r_form;
    b.weights = weights;
    b.r_acc = snap(weights.alpha_sp * r_sp + weights.alpha_crit * r_crit);
    b.r_total = snap(b.r_acc + weights.alpha_form * r_form);
    return b;
}

RewardBreakdown total_reward(const CriticTrace& trace, const PreferenceTuple& tuple, const RewardWeights& weights) {
    if (!tuple.gold_answer) throw ConfigError("stage-2 reward requires gold answer (tuple " + tuple.id + ")");
    const AnswerKind kind = infer_answer_kind(*tuple.gold_answer);
    return combine_rewards(self_prediction_reward(trace, *tuple.gold_answer, kind),
                           critic_reward(trace, tuple.preference), format_reward(trace), weights);
}

nlohmann::json to_json(const RewardBreakdown& r) {
    return nlohmann::json{{"r_sp", r.r_sp},       {"r_crit", r.r_crit}, {"r_form", r.r_form},
                          {"r_acc", r.r_acc},     {"r_total", r.r_total}, {"weights", to_json(r.weights)}};
}

} // namespace critickit
