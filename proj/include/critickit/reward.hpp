// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "critickit/config.hpp"
#include "critickit/trace.hpp"
#include "critickit/types.hpp"

namespace critickit {

struct RewardBreakdown {
    double r_sp = 0.0;
    double r_crit = 0.0;
    double r_form = 0.0;
    double r_acc = 0.0;
    double r_total = 0.0;
    RewardWeights weights;

    bool operator==(const RewardBreakdown&) const = default;
};

/// Letter equality for multiple choice; case-insensitive whitespace-collapsed equality for free text.
bool answers_match(std::string_view pred, std::string_view gold, AnswerKind kind);

/// Indicator that @p pred equals @p gold. An absent prediction scores 0.
double stage1_reward(const std::optional<std::string>& pred, std::string_view gold, AnswerKind kind);

double self_prediction_reward(const CriticTrace& trace, std::string_view gold, AnswerKind kind);

/// 1 iff the trace carries a decided verdict equal to @p preference.
double critic_reward(const CriticTrace& trace, Preference preference);

/// Weighted combination of precomputed components:
///   r_acc = alpha_sp * r_sp + alpha_crit * r_crit,  r_total = r_acc + alpha_form * r_form.
/// Results are snapped to a 1e-12 decimal grid so decimal weights such as 0.2/0.7/0.1
/// add up to their exact decimal totals (0.9, 1.0) instead of 0.8999999999999999.
RewardBreakdown combine_rewards(double r_sp, double r_crit, double r_form, const RewardWeights& weights);

/// Stage-2 reward for one critic output. Throws ConfigError when the tuple has no gold answer.
RewardBreakdown total_reward(const CriticTrace& trace, const PreferenceTuple& tuple, const RewardWeights& weights);

nlohmann::json to_json(const RewardBreakdown& r);

} // namespace critickit
