// SPDX-License-Identifier: Apache-2.0

#include "critickit/config.hpp"

#include <cmath>
#include <initializer_list>
#include <regex>
#include <string_view>

#include "critickit/errors.hpp"
#include "critickit/io.hpp"

namespace critickit {

namespace {

void check_unit_interval(double v, std::string_view name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw ConfigError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
}

void reject_unknown_keys(const json& block, std::string_view where, std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : block.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown key \"" + key + "\" in " + std::string(where));
    }
}

template <typename T>
void read_number(const json& block, std::string_view where, const char* key, T& out) {
    auto it = block.find(key);
    if (it == block.end() || it->is_null()) return;
    if (!it->is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) throw ConfigError(std::string(where) + "." + key + " must be an integer");
        if constexpr (std::is_unsigned_v<T>) {
            if (it->get<long long>() < 0) throw ConfigError(std::string(where) + "." + key + " must be nonnegative");
        }
    }
    out = it->get<T>();
}

void read_string(const json& block, std::string_view where, const char* key, std::string& out) {
    auto it = block.find(key);
    if (it == block.end() || it->is_null()) return;
    if (!it->is_string()) throw ConfigError(std::string(where) + "." + key + " must be a string");
    out = it->get<std::string>();
}

const json& block_or_empty(const json& doc, const char* key) {
    static const json empty = json::object();
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return empty;
    if (!it->is_object()) throw ConfigError(std::string(key) + " must be an object");
    return *it;
}

} // namespace

void validate(const RewardWeights& w) {
    check_unit_interval(w.alpha_sp, "alpha_sp");
    check_unit_interval(w.alpha_crit, "alpha_crit");
    check_unit_interval(w.alpha_form, "alpha_form");
}

void validate(const GrpoConfig& g) {
    if (g.group_size < 2) throw ConfigError("group_size must be at least 2 (advantages need a group)");
    if (!(g.clip_epsilon > 0.0) || !std::isfinite(g.clip_epsilon)) throw ConfigError("clip_epsilon must be positive");
    if (!(g.kl_coefficient >= 0.0) || !std::isfinite(g.kl_coefficient))
        throw ConfigError("kl_coefficient must be nonnegative");
    if (!(g.learning_rate > 0.0) || !std::isfinite(g.learning_rate)) throw ConfigError("learning_rate must be positive");
    if (!(g.std_floor > 0.0) || !std::isfinite(g.std_floor)) throw ConfigError("std_floor must be positive");
}

void validate(const SamplingConfig& s) {
    if (!(s.temperature >= 0.0) || !std::isfinite(s.temperature)) throw ConfigError("temperature must be nonnegative");
    if (s.num_samples < 1) throw ConfigError("num_samples must be at least 1");
    if (s.max_tokens < 1) throw ConfigError("max_tokens must be positive");
}

void validate(const EndpointConfig& e) {
    static const std::regex url_re(R"(^https?://[^/\s:]+(:\d+)?(/[^\s]*)?$)");
    if (!std::regex_match(e.base_url, url_re)) throw ConfigError("endpoint base_url is not a valid http(s) URL: " + e.base_url);
    if (!(e.timeout_s > 0.0)) throw ConfigError("endpoint timeout_s must be positive");
    if (e.max_retries < 0 || e.max_retries > 16) throw ConfigError("endpoint max_retries must be in [0, 16]");
    if (e.parallelism < 1) throw ConfigError("endpoint parallelism must be at least 1");
    if (!(e.backoff_base_s >= 0.0) || !(e.backoff_cap_s >= e.backoff_base_s))
        throw ConfigError("endpoint backoff must satisfy 0 <= base <= cap");
}

ValidatedConfig validate_config(const RewardWeights& weights, const GrpoConfig& grpo) {
    validate(weights);
    validate(grpo);
    return ValidatedConfig{weights, grpo};
}

ResolvedConfig resolve_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    reject_unknown_keys(doc, "config", {"reward_weights", "grpo", "sampling", "endpoints"});
    ResolvedConfig c;

    const json& w = block_or_empty(doc, "reward_weights");
    reject_unknown_keys(w, "reward_weights", {"alpha_sp", "alpha_crit", "alpha_form"});
    read_number(w, "reward_weights", "alpha_sp", c.weights.alpha_sp);
    read_number(w, "reward_weights", "alpha_crit", c.weights.alpha_crit);
    read_number(w, "reward_weights", "alpha_form", c.weights.alpha_form);

    const json& g = block_or_empty(doc, "grpo");
    reject_unknown_keys(g, "grpo", {"group_size", "clip_epsilon", "kl_coefficient", "learning_rate", "std_floor"});
    read_number(g, "grpo", "group_size", c.grpo.group_size);
    read_number(g, "grpo", "clip_epsilon", c.grpo.clip_epsilon);
    read_number(g, "grpo", "kl_coefficient", c.grpo.kl_coefficient);
    read_number(g, "grpo", "learning_rate", c.grpo.learning_rate);
    read_number(g, "grpo", "std_floor", c.grpo.std_floor);

    const json& s = block_or_empty(doc, "sampling");
    reject_unknown_keys(s, "sampling", {"temperature", "num_samples", "max_tokens"});
    read_number(s, "sampling", "temperature", c.sampling.temperature);
    read_number(s, "sampling", "num_samples", c.sampling.num_samples);
    read_number(s, "sampling", "max_tokens", c.sampling.max_tokens);

    for (const auto& [name, e] : block_or_empty(doc, "endpoints").items()) {
        if (!e.is_object()) throw ConfigError("endpoints." + name + " must be an object");
        const std::string where = "endpoints." + name;
        reject_unknown_keys(e, where, {"base_url", "model_name", "api_key_env", "timeout_s", "max_retries",
                                       "parallelism", "backoff_base_s", "backoff_cap_s"});
        EndpointConfig ep;
        read_string(e, where, "base_url", ep.base_url);
        read_string(e, where, "model_name", ep.model_name);
        read_string(e, where, "api_key_env", ep.api_key_env);
        read_number(e, where, "timeout_s", ep.timeout_s);
        read_number(e, where, "max_retries", ep.max_retries);
        read_number(e, where, "parallelism", ep.parallelism);
        read_number(e, where, "backoff_base_s", ep.backoff_base_s);
        read_number(e, where, "backoff_cap_s", ep.backoff_cap_s);
        validate(ep);
        c.endpoints.emplace(name, std::move(ep));
    }

    validate_config(c.weights, c.grpo);
    validate(c.sampling);
    return c;
}

ResolvedConfig load_config(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config file " + path.string() + " is not valid JSON");
    return resolve_config(doc);
}

json to_json(const RewardWeights& w) {
    return json{{"alpha_sp", w.alpha_sp}, {"alpha_crit", w.alpha_crit}, {"alpha_form", w.alpha_form}};
}

json to_json(const GrpoConfig& g) {
    return json{{"group_size", g.group_size},
                {"clip_epsilon", g.clip_epsilon},
                {"kl_coefficient", g.kl_coefficient},
                {"learning_rate", g.learning_rate},
                {"std_floor", g.std_floor}};
}

json to_json(const SamplingConfig& s) {
    return json{{"temperature", s.temperature}, {"num_samples", s.num_samples}, {"max_tokens", s.max_tokens}};
}

json to_json(const EndpointConfig& e) {
    return json{{"base_url", e.base_url},           {"model_name", e.model_name},
                {"api_key_env", e.api_key_env},     {"timeout_s", e.timeout_s},
                {"max_retries", e.max_retries},     {"parallelism", e.parallelism},
                {"backoff_base_s", e.backoff_base_s}, {"backoff_cap_s", e.backoff_cap_s}};
}

json to_json(const ResolvedConfig& c) {
    json endpoints = json::object();
    for (const auto& [name, e] : c.endpoints) endpoints[name] = to_json(e);
    return json{{"reward_weights", to_json(c.weights)},
                {"grpo", to_json(c.grpo)},
                {"sampling", to_json(c.sampling)},
                {"endpoints", endpoints}};
}

} // namespace critickit
