// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file grpo.hpp
/// @brief Group-relative policy optimization on sequence-level outcomes.
///
/// Each sampled trace is treated as one atomic action with log-probability
/// log pi(o). For a group of G traces the minimized loss is
///
///     loss = -(1/G) sum_o min(rho_o A_o, clip(rho_o, 1-eps, 1+eps) A_o) + beta * KL
///
/// with rho_o = exp(logp_new - logp_old), A_o the group-normalized reward, and KL
/// estimated per sample by k3 = exp(logp_ref - logp_new) - (logp_ref - logp_new) - 1.
///
/// ToyPolicy is a softmax over K logits; it is small enough that gradients can be
/// checked against finite differences and the exact KL is available in closed form.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "critickit/config.hpp"

namespace critickit {

struct RolloutGroup {
    std::vector<double> rewards;
    std::vector<double> logp_new;
    std::vector<double> logp_old;
    std::vector<double> logp_ref;
};

/// Throws ConfigError unless all four vectors have the same length >= 2 and every value is finite.
void validate(const RolloutGroup& group);

struct GrpoLossReport {
    std::vector<double> advantages;
    std::vector<double> ratios;
    double surrogate = 0.0;
    double kl_term = 0.0;
    double loss = 0.0;
    // True when the reward std fell below the floor and every advantage was zeroed.
    bool degenerate = false;
};

/// (r - mean) / population_std; all zeros when std < std_floor. Throws ConfigError for fewer than 2 rewards.
std::vector<double> group_advantages(std::span<const double> rewards, double std_floor);

GrpoLossReport grpo_loss(const RolloutGroup& group, const GrpoConfig& config);

/// d loss / d logp_new for every sample, holding logp_old, logp_ref, and rewards fixed.
std::vector<double> grpo_loss_logp_gradient(const RolloutGroup& group, const GrpoConfig& config);

class ToyPolicy {
public:
    /// The reference policy is frozen to @p logits. Throws ConfigError for empty or non-finite logits.
    explicit ToyPolicy(std::vector<double> logits);

    std::size_t num_outcomes() const noexcept { return logits_.size(); }
    const std::vector<double>& logits() const noexcept { return logits_; }
    const std::vector<double>& reference_logits() const noexcept { return reference_; }

    std::vector<double> probabilities() const;
    /// log softmax(logits)[outcome], max-subtracted. Throws ConfigError when out of range.
    double log_prob(std::size_t outcome) const;
    double reference_log_prob(std::size_t outcome) const;

    /// Exact KL(pi || pi_ref).
    double kl_to_reference() const;
    /// Total-variation distance to the reference policy.
    double tv_to_reference() const;

    /// Same reference, new logits.
    ToyPolicy with_logits(std::vector<double> logits) const;

private:
    ToyPolicy(std::vector<double> logits, std::vector<double> reference);

    std::vector<double> logits_;
    std::vector<double> reference_;
};

double policy_logprob(const ToyPolicy& policy, std::size_t outcome);

/// Builds a rollout group for @p outcomes scored with @p rewards, taking logp_new and
/// logp_ref from @p policy and logp_old as given.
RolloutGroup make_group(const ToyPolicy& policy, std::span<const std::size_t> outcomes,
                        std::span<const double> rewards, std::span<const double> logp_old);

/// Gradient of grpo_loss with respect to the policy logits for the given sampled outcomes.
std::vector<double> grpo_logit_gradient(const ToyPolicy& policy, std::span<const std::size_t> outcomes,
                                        const RolloutGroup& group, const GrpoConfig& config);

using OutcomeReward = std::function<double(std::size_t outcome)>;

struct GrpoStepResult {
    ToyPolicy policy;
    GrpoLossReport report;
    std::vector<std::size_t> outcomes;
};

/// Samples group_size outcomes from @p policy (deterministic in @p rng_seed), scores them,
/// and applies one gradient-descent step with config.learning_rate.
GrpoStepResult grpo_step(const ToyPolicy& policy, const OutcomeReward& reward, const GrpoConfig& config,
                         std::uint64_t rng_seed);

/// Inverse-CDF draw from @p probabilities using a 53-bit uniform taken from @p bits.
std::size_t sample_index(std::span<const double> probabilities, std::uint64_t bits);

struct GrpoDemoOptions {
    std::size_t num_outcomes = 5;
    std::size_t rewarded_outcome = 0;
    std::size_t steps = 500;
    std::uint64_t seed = 0;
    GrpoConfig grpo{.group_size = 8, .clip_epsilon = 0.2, .kl_coefficient = 0.01, .learning_rate = 0.5};
};

struct GrpoDemoStep {
    std::size_t step = 0;
    double loss = 0.0;
    double surrogate = 0.0;
    double kl_term = 0.0;
    double p_rewarded = 0.0;
};

/// Trains a uniform ToyPolicy to prefer the rewarded outcome. Returns one entry per step
/// (p_rewarded measured after the update) and the final policy.
std::pair<std::vector<GrpoDemoStep>, ToyPolicy> run_grpo_demo(const GrpoDemoOptions& options);

nlohmann::json to_json(const GrpoLossReport& r);
nlohmann::json to_json(const GrpoDemoStep& s);

} // namespace critickit
