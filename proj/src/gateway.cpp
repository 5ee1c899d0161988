// SPDX-License-Identifier: Apache-2.0

#include "critickit/gateway.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <thread>

#include <httplib.h>

#include "critickit/errors.hpp"
#include "critickit/prompts.hpp"

namespace critickit {

using nlohmann::json;

namespace {

bool is_video_reference(std::string_view ref) {
    static constexpr std::string_view kVideoExtensions[] = {".mp4", ".mov", ".avi", ".mkv", ".webm", ".m4v"};
    std::string lowered(ref);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (auto q = lowered.find_first_of("?#"); q != std::string::npos) lowered.resize(q);
    return std::any_of(std::begin(kVideoExtensions), std::end(kVideoExtensions),
                       [&](std::string_view ext) { return lowered.ends_with(ext); });
}

json message_to_wire(const ChatMessage& m) {
    if (m.media.empty()) return json{{"role", m.role}, {"content", m.text}};
    json parts = json::array();
    for (const auto& ref : m.media) {
        if (is_video_reference(ref))
            parts.push_back(json{{"type", "video_url"}, {"video_url", {{"url", ref}}}});
        else
            parts.push_back(json{{"type", "image_url"}, {"image_url", {{"url", ref}}}});
    }
    parts.push_back(json{{"type", "text"}, {"text", m.text}});
    return json{{"role", m.role}, {"content", parts}};
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status <= 599); }

} // namespace

void validate(const ChatRequest& request) {
    if (request.n < 1) throw ConfigError("chat request n must be at least 1");
    bool has_user = false;
    for (const auto& m : request.messages) {
        if (m.role != "system" && m.role != "user") throw ConfigError("unsupported chat role: " + m.role);
        has_user = has_user || m.role == "user";
    }
    if (!has_user) throw ConfigError("chat request needs at least one user message");
}

json to_wire_json(const ChatRequest& request, std::string_view model) {
    json messages = json::array();
    for (const auto& m : request.messages) messages.push_back(message_to_wire(m));
    return json{{"model", model},
                {"messages", messages},
                {"temperature", request.temperature},
                {"max_tokens", request.max_tokens},
                {"n", request.n}};
}

ChatRequest chat_request_from_wire_json(const json& body) {
    ChatRequest r;
    r.temperature = body.value("temperature", 0.0);
    r.max_tokens = body.value("max_tokens", std::size_t{4096});
    r.n = body.value("n", std::size_t{1});
    for (const auto& m : body.at("messages")) {
        ChatMessage msg;
        msg.role = m.at("role").get<std::string>();
        const json& content = m.at("content");
        if (content.is_string()) {
            msg.text = content.get<std::string>();
        } else {
            for (const auto& part : content) {
                const std::string type = part.at("type").get<std::string>();
                if (type == "text") msg.text += part.at("text").get<std::string>();
                else msg.media.push_back(part.at(type).at("url").get<std::string>());
            }
        }
        r.messages.push_back(std::move(msg));
    }
    return r;
}

std::vector<std::string> parse_completion_texts(const json& body) {
    if (!body.is_object() || !body.contains("choices") || !body["choices"].is_array())
        throw TransportError("completion response has no choices array");
    std::vector<std::pair<long, std::string>> indexed;
    long position = 0;
    for (const auto& choice : body["choices"]) {
        const long index = choice.contains("index") && choice["index"].is_number_integer()
                               ? choice["index"].get<long>()
                               : position;
        ++position;
        if (!choice.contains("message") || !choice["message"].is_object())
            throw TransportError("completion choice has no message");
        const json& content = choice["message"].value("content", json(nullptr));
        std::string text;
        if (content.is_string()) {
            text = content.get<std::string>();
        } else if (content.is_array()) {
            for (const auto& part : content)
                if (part.is_object() && part.value("type", "") == "text") text += part.value("text", "");
        } else if (!content.is_null()) {
            throw TransportError("completion message content has unexpected type");
        }
        indexed.emplace_back(index, std::move(text));
    }
    std::stable_sort(indexed.begin(), indexed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> texts;
    texts.reserve(indexed.size());
    for (auto& [_, t] : indexed) texts.push_back(std::move(t));
    return texts;
}

struct ChatClient::Target {
    std::string scheme_host_port;
    std::string path;
};

ChatClient::ChatClient(EndpointConfig config)
    : config_(std::move(config)),
      in_flight_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.parallelism))) {
    validate(config_);
    static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(config_.base_url, m, url_re)) throw ConfigError("bad endpoint URL: " + config_.base_url);
    std::string prefix = m[2].matched ? m[2].str() : std::string();
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    std::string path = prefix.ends_with("/v1") ? prefix + "/chat/completions" : prefix + "/v1/chat/completions";
    target_ = std::make_unique<Target>(Target{m[1].str(), std::move(path)});
}

ChatClient::~ChatClient() = default;

CompletionResult ChatClient::complete(const ChatRequest& request) {
    validate(request);
    httplib::Headers headers;
    if (!config_.api_key_env.empty()) {
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (key == nullptr || *key == '\0')
            throw ConfigError("environment variable " + config_.api_key_env + " (api_key_env) is not set");
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    const std::string body = to_wire_json(request, config_.model_name).dump();

    in_flight_.acquire();
    struct Release {
        std::counting_semaphore<>& s;
        ~Release() { s.release(); }
    } release{in_flight_};

    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(config_.timeout_s));
    int attempts = 0;
    int last_status = 0;
    std::string last_reason;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            const double step = std::min(config_.backoff_cap_s, config_.backoff_base_s * std::ldexp(1.0, attempt - 1));
            // xorshift64 jitter; only affects timing, never outputs.
            std::uint64_t x = jitter_state_.load();
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            jitter_state_.store(x);
            const double jitter = 0.5 + 0.5 * static_cast<double>(x >> 11) * 0x1.0p-53;
            std::this_thread::sleep_for(std::chrono::duration<double>(step * jitter));
        }
        ++attempts;
        ++total_attempts_;
        httplib::Client http(target_->scheme_host_port);
        http.set_connection_timeout(timeout);
        http.set_read_timeout(timeout);
        http.set_write_timeout(timeout);
        auto res = http.Post(target_->path, headers, body, "application/json");
        if (!res) {
            last_status = 0;
            last_reason = "request failed: " + httplib::to_string(res.error());
            continue;
        }
        last_status = res->status;
        if (res->status == 200) {
            json parsed = json::parse(res->body, nullptr, false);
            if (parsed.is_discarded()) throw TransportError("completion response is not JSON", 200, attempts);
            CompletionResult result{parse_completion_texts(parsed), attempts};
            if (result.texts.size() != request.n)
                throw TransportError("endpoint returned " + std::to_string(result.texts.size()) + " choices, expected " +
                                         std::to_string(request.n),
                                     200, attempts);
            return result;
        }
        if (res->status == 401 || res->status == 403)
            throw ConfigError("endpoint rejected credentials (HTTP " + std::to_string(res->status) +
                              "); check the key in api_key_env " +
                              (config_.api_key_env.empty() ? std::string("(unset)") : config_.api_key_env));
        last_reason = "HTTP " + std::to_string(res->status);
        if (!retryable_status(res->status))
            throw TransportError("endpoint " + config_.base_url + " returned " + last_reason, res->status, attempts);
    }
    throw TransportError("endpoint " + config_.base_url + " failed after " + std::to_string(attempts) +
                             " attempts: " + last_reason,
                         last_status, attempts);
}

CompletionResult complete(const EndpointConfig& endpoint, const ChatRequest& request) {
    ChatClient client(endpoint);
    return client.complete(request);
}

ChatRequest render_critic_request(const Prompt& prompt, const CandidateResponse& first,
                                  const CandidateResponse& second) {
    ChatRequest r;
    r.messages.push_back(ChatMessage{
        "user",
        render_template(critic_prompt_template(),
                        {{"question", prompt.question}, {"resp1", first.text()}, {"resp2", second.text()}}),
        prompt.media});
    return r;
}

ChatRequest render_critic_prompt(const PreferenceTuple& tuple) {
    return render_critic_request(tuple.prompt, tuple.response_a, tuple.response_b);
}

ChatRequest render_thinking_request(const Prompt& prompt, const SamplingConfig& sampling) {
    validate(sampling);
    ChatRequest r;
    r.temperature = sampling.temperature;
    r.max_tokens = sampling.max_tokens;
    r.n = sampling.num_samples;
    r.messages.push_back(
        ChatMessage{"user", render_template(thinking_prompt_template(), {{"question", prompt.question}}), prompt.media});
    return r;
}

ChatRequest render_verification_request(std::string_view question, std::string_view response, std::string_view gold) {
    ChatRequest r;
    r.max_tokens = 8;
    r.messages.push_back(ChatMessage{"user",
                                     render_template(verify_answer_template(), {{"question", std::string(question)},
                                                                                {"response", std::string(response)},
                                                                                {"gold", std::string(gold)}}),
                                     {}});
    return r;
}

int parse_yes_no(std::string_view reply) {
    std::size_t i = 0;
    while (i < reply.size() && std::isspace(static_cast<unsigned char>(reply[i]))) ++i;
    std::string word;
    while (i < reply.size() && std::isalpha(static_cast<unsigned char>(reply[i])))
        word += static_cast<char>(std::toupper(static_cast<unsigned char>(reply[i++])));
    if (word == "YES") return 1;
    if (word == "NO") return 0;
    throw UnparseableReply("verification reply is not YES/NO: \"" + std::string(reply.substr(0, 80)) + "\"");
}

int verify_answer(ChatClient& client, std::string_view question, std::string_view response, std::string_view gold) {
    const auto result = client.complete(render_verification_request(question, response, gold));
    return parse_yes_no(result.texts.front());
}

EndpointConfig resolve_endpoint(const ResolvedConfig& config, const std::string& name_or_url) {
    if (auto it = config.endpoints.find(name_or_url); it != config.endpoints.end()) return it->second;
    if (name_or_url.starts_with("http://") || name_or_url.starts_with("https://")) {
        EndpointConfig e;
        e.base_url = name_or_url;
        e.model_name = "default";
        validate(e);
        return e;
    }
    throw ConfigError("unknown endpoint \"" + name_or_url + "\" (not in config and not an http(s) URL)");
}

} // namespace critickit
