// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

namespace critickit {

using json = nlohmann::json;

/// Weights of the stage-2 reward terms.
struct RewardWeights {
    double alpha_sp = 0.2;
    double alpha_crit = 0.7;
    double alpha_form = 0.1;

    bool operator==(const RewardWeights&) const = default;
};

struct GrpoConfig {
    std::size_t group_size = 8;
    double clip_epsilon = 0.2;
    double kl_coefficient = 0.01;
    double learning_rate = 1e-6;
    // Groups whose reward std falls below this get zero advantages.
    double std_floor = 1e-8;

    bool operator==(const GrpoConfig&) const = default;
};

struct SamplingConfig {
    double temperature = 0.6;
    std::size_t num_samples = 8;
    std::size_t max_tokens = 4096;

    bool operator==(const SamplingConfig&) const = default;
};

/// Connection settings for one OpenAI-compatible chat-completions endpoint.
struct EndpointConfig {
    std::string base_url;
    std::string model_name;
    // Name of the environment variable holding the bearer token; empty disables auth.
    std::string api_key_env;
    double timeout_s = 120.0;
    int max_retries = 3;
    std::size_t parallelism = 4;
    double backoff_base_s = 0.5;
    double backoff_cap_s = 8.0;

    bool operator==(const EndpointConfig&) const = default;
};

void validate(const RewardWeights& w);
void validate(const GrpoConfig& g);
void validate(const SamplingConfig& s);
void validate(const EndpointConfig& e);

struct ValidatedConfig {
    RewardWeights weights;
    GrpoConfig grpo;
};

/// Validates both blocks and returns them unchanged; throws ConfigError on any range violation.
ValidatedConfig validate_config(const RewardWeights& weights, const GrpoConfig& grpo);

/// Everything a run can be configured with. Omitted fields keep their defaults.
struct ResolvedConfig {
    RewardWeights weights;
    GrpoConfig grpo;
    SamplingConfig sampling;
    std::map<std::string, EndpointConfig> endpoints;
};

/// Parses a config document ({"reward_weights", "grpo", "sampling", "endpoints"}),
/// filling defaults and validating every block.
ResolvedConfig resolve_config(const json& doc);
ResolvedConfig load_config(const std::filesystem::path& path);

json to_json(const RewardWeights& w);
json to_json(const GrpoConfig& g);
json to_json(const SamplingConfig& s);
json to_json(const EndpointConfig& e);
json to_json(const ResolvedConfig& c);

} // namespace critickit
