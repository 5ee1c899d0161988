// SPDX-License-Identifier: Apache-2.0

#include "critickit/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "critickit/errors.hpp"

namespace critickit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<double> log_softmax(const std::vector<double>& logits) {
    const double m = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double z : logits) sum += std::exp(z - m);
    const double lse = m + std::log(sum);
    std::vector<double> out(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
    return out;
}

void check_logits(const std::vector<double>& logits) {
    if (logits.empty()) throw ConfigError("policy needs at least one outcome");
    for (double z : logits)
        if (!std::isfinite(z)) throw ConfigError("policy logits must be finite");
}

// Per-sample derivative of the clipped surrogate term with respect to logp_new.
// Zero when the clipped branch is strictly smaller (the ratio has left the trust region
// in the direction the advantage pushes it).
double surrogate_logp_derivative(double ratio, double advantage, double eps) {
    const double unclipped = ratio * advantage;
    const double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps) * advantage;
    return unclipped <= clipped ? unclipped : 0.0;
}

} // namespace

void validate(const RolloutGroup& group) {
    const std::size_t g = group.rewards.size();
    if (g < 2) throw ConfigError("rollout group needs at least 2 samples");
    if (group.logp_new.size() != g || group.logp_old.size() != g || group.logp_ref.size() != g)
        throw ConfigError("rollout group vectors differ in length");
    for (const auto* v : {&group.rewards, &group.logp_new, &group.logp_old, &group.logp_ref})
        for (double x : *v)
            if (!std::isfinite(x)) throw ConfigError("rollout group contains a non-finite value");
}

std::vector<double> group_advantages(std::span<const double> rewards, double std_floor) {
    if (rewards.size() < 2) throw ConfigError("advantages need a group of at least 2 rewards");
    if (!(std_floor > 0.0)) throw ConfigError("std_floor must be positive");
    const double n = static_cast<double>(rewards.size());
    const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
    double var = 0.0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    const double stdev = std::sqrt(var / n);
    std::vector<double> out(rewards.size(), 0.0);
    if (stdev < std_floor) return out;
    for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / stdev;
    return out;
}

GrpoLossReport grpo_loss(const RolloutGroup& group, const GrpoConfig& config) {
    validate(group);
    GrpoLossReport r;
    const std::size_t g = group.rewards.size();
    const double eps = config.clip_epsilon;
    r.advantages = group_advantages(group.rewards, config.std_floor);
    r.degenerate = std::all_of(r.advantages.begin(), r.advantages.end(), [](double a) { return a == 0.0; });
    r.ratios.resize(g);
    for (std::size_t i = 0; i < g; ++i) {
        const double ratio = std::exp(group.logp_new[i] - group.logp_old[i]);
        r.ratios[i] = ratio;
        const double a = r.advantages[i];
        r.surrogate += std::min(ratio * a, std::clamp(ratio, 1.0 - eps, 1.0 + eps) * a);
        const double d = group.logp_ref[i] - group.logp_new[i];
        r.kl_term += std::exp(d) - d - 1.0;
    }
    r.surrogate /= static_cast<double>(g);
    r.kl_term /= static_cast<double>(g);
    r.loss = -r.surrogate + config.kl_coefficient * r.kl_term;
    return r;
}

std::vector<double> grpo_loss_logp_gradient(const RolloutGroup& group, const GrpoConfig& config) {
    validate(group);
    const std::size_t g = group.rewards.size();
    const double inv_g = 1.0 / static_cast<double>(g);
    const auto advantages = group_advantages(group.rewards, config.std_floor);
    std::vector<double> grad(g);
    for (std::size_t i = 0; i < g; ++i) {
        const double ratio = std::exp(group.logp_new[i] - group.logp_old[i]);
        const double d_surr = surrogate_logp_derivative(ratio, advantages[i], config.clip_epsilon);
        const double d_kl = 1.0 - std::exp(group.logp_ref[i] - group.logp_new[i]);
        grad[i] = inv_g * (-d_surr + config.kl_coefficient * d_kl);
    }
    return grad;
}

ToyPolicy::ToyPolicy(std::vector<double> logits) : logits_(std::move(logits)) {
    check_logits(logits_);
    reference_ = logits_;
}

ToyPolicy::ToyPolicy(std::vector<double> logits, std::vector<double> reference)
    : logits_(std::move(logits)), reference_(std::move(reference)) {
    check_logits(logits_);
    if (logits_.size() != reference_.size()) throw ConfigError("policy and reference sizes differ");
}

std::vector<double> ToyPolicy::probabilities() const {
    auto lp = log_softmax(logits_);
    for (double& v : lp) v = std::exp(v);
    return lp;
}

double ToyPolicy::log_prob(std::size_t outcome) const {
    if (outcome >= logits_.size())
        throw ConfigError("outcome " + std::to_string(outcome) + " out of range for " +
                          std::to_string(logits_.size()) + " outcomes");
    return log_softmax(logits_)[outcome];
}

double ToyPolicy::reference_log_prob(std::size_t outcome) const {
    if (outcome >= reference_.size()) throw ConfigError("outcome out of range");
    return log_softmax(reference_)[outcome];
}

double ToyPolicy::kl_to_reference() const {
    const auto lp = log_softmax(logits_);
    const auto lq = log_softmax(reference_);
    double kl = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i) kl += std::exp(lp[i]) * (lp[i] - lq[i]);
    return kl;
}

double ToyPolicy::tv_to_reference() const {
    const auto lp = log_softmax(logits_);
    const auto lq = log_softmax(reference_);
    double tv = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i) tv += std::abs(std::exp(lp[i]) - std::exp(lq[i]));
    return 0.5 * tv;
}

ToyPolicy ToyPolicy::with_logits(std::vector<double> logits) const { return ToyPolicy(std::move(logits), reference_); }

double policy_logprob(const ToyPolicy& policy, std::size_t outcome) { return policy.log_prob(outcome); }

RolloutGroup make_group(const ToyPolicy& policy, std::span<const std::size_t> outcomes,
                        std::span<const double> rewards, std::span<const double> logp_old) {
    if (rewards.size() != outcomes.size() || logp_old.size() != outcomes.size())
        throw ConfigError("outcomes, rewards and logp_old differ in length");
    const auto lp = log_softmax(policy.logits());
    const auto lr = log_softmax(policy.reference_logits());
    RolloutGroup g;
    g.rewards.assign(rewards.begin(), rewards.end());
    g.logp_old.assign(logp_old.begin(), logp_old.end());
    for (std::size_t o : outcomes) {
        if (o >= lp.size()) throw ConfigError("outcome out of range");
        g.logp_new.push_back(lp[o]);
        g.logp_ref.push_back(lr[o]);
    }
    return g;
}

std::vector<double> grpo_logit_gradient(const ToyPolicy& policy, std::span<const std::size_t> outcomes,
                                        const RolloutGroup& group, const GrpoConfig& config) {
    if (outcomes.size() != group.rewards.size()) throw ConfigError("outcomes and group differ in length");
    const auto d_logp = grpo_loss_logp_gradient(group, config);
    const auto probs = policy.probabilities();
    // d logp(o) / d z_k = [k == o] - p_k
    std::vector<double> grad(probs.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        grad[outcomes[i]] += d_logp[i];
        total += d_logp[i];
    }
    for (std::size_t k = 0; k < probs.size(); ++k) grad[k] -= total * probs[k];
    return grad;
}

std::size_t sample_index(std::span<const double> probabilities, std::uint64_t bits) {
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        cumulative += probabilities[i];
        if (u < cumulative) return i;
    }
    return probabilities.size() - 1;
}

GrpoStepResult grpo_step(const ToyPolicy& policy, const OutcomeReward& reward, const GrpoConfig& config,
                         std::uint64_t rng_seed) {
    validate(config);
    std::mt19937_64 rng(rng_seed);
    const auto probs = policy.probabilities();
    std::vector<std::size_t> outcomes(config.group_size);
    std::vector<double> rewards(config.group_size);
    std::vector<double> logp_old(config.group_size);
    for (std::size_t i = 0; i < config.group_size; ++i) {
        outcomes[i] = sample_index(probs, rng());
        rewards[i] = reward(outcomes[i]);
        logp_old[i] = policy.log_prob(outcomes[i]);
    }
    const RolloutGroup group = make_group(policy, outcomes, rewards, logp_old);
    GrpoLossReport report = grpo_loss(group, config);
    const auto grad = grpo_logit_gradient(policy, outcomes, group, config);
    std::vector<double> next = policy.logits();
    for (std::size_t k = 0; k < next.size(); ++k) next[k] -= config.learning_rate * grad[k];
    return GrpoStepResult{policy.with_logits(std::move(next)), std::move(report), std::move(outcomes)};
}

std::pair<std::vector<GrpoDemoStep>, ToyPolicy> run_grpo_demo(const GrpoDemoOptions& options) {
    if (options.num_outcomes < 2) throw ConfigError("demo needs at least 2 outcomes");
    if (options.rewarded_outcome >= options.num_outcomes) throw ConfigError("rewarded outcome out of range");
    validate(options.grpo);
    ToyPolicy policy(std::vector<double>(options.num_outcomes, 0.0));
    const OutcomeReward reward = [&](std::size_t o) { return o == options.rewarded_outcome ? 1.0 : 0.0; };
    std::vector<GrpoDemoStep> log;
    log.reserve(options.steps);
    for (std::size_t step = 0; step < options.steps; ++step) {
        const std::uint64_t step_seed = splitmix64(options.seed ^ splitmix64(step));
        GrpoStepResult result = grpo_step(policy, reward, options.grpo, step_seed);
        policy = std::move(result.policy);
        log.push_back(GrpoDemoStep{step, result.report.loss, result.report.surrogate, result.report.kl_term,
                                   policy.probabilities()[options.rewarded_outcome]});
    }
    return {std::move(log), std::move(policy)};
}

nlohmann::json to_json(const GrpoLossReport& r) {
    return nlohmann::json{{"advantages", r.advantages}, {"ratios", r.ratios},   {"surrogate", r.surrogate},
                          {"kl_term", r.kl_term},       {"loss", r.loss},       {"degenerate", r.degenerate}};
}

nlohmann::json to_json(const GrpoDemoStep& s) {
    return nlohmann::json{{"step", s.step},
                          {"loss", s.loss},
                          {"surrogate", s.surrogate},
                          {"kl_term", s.kl_term},
                          {"p_rewarded", s.p_rewarded}};
}

} // namespace critickit
