// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file gateway.hpp
/// @brief Client for OpenAI-compatible chat-completions endpoints.
///
/// Requests go to POST {base_url}/chat/completions when base_url ends in /v1, and to
/// {base_url}/v1/chat/completions otherwise. Media references are attached as
/// image_url / video_url content parts and are never fetched locally.
///
/// Retry policy: HTTP 429, 5xx and connection failures are retried with exponential
/// backoff (base * 2^k, capped, with jitter in [0.5, 1]) up to max_retries times.
/// 401/403 raise ConfigError naming the key variable; any other 4xx raises
/// TransportError without retrying.

#include <atomic>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "critickit/config.hpp"
#include "critickit/types.hpp"

namespace critickit {

struct ChatMessage {
    std::string role;  // "system" or "user"
    std::string text;
    std::vector<std::string> media;

    bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    std::size_t max_tokens = 4096;
    std::size_t n = 1;

    bool operator==(const ChatRequest&) const = default;
};

/// Throws ConfigError unless there is at least one user message, every role is system/user, and n >= 1.
void validate(const ChatRequest& request);

/// Wire body for POST /chat/completions.
nlohmann::json to_wire_json(const ChatRequest& request, std::string_view model);
ChatRequest chat_request_from_wire_json(const nlohmann::json& body);

/// Completion texts from a chat-completions response body, ordered by choice index.
/// Throws TransportError when the body does not have the expected shape.
std::vector<std::string> parse_completion_texts(const nlohmann::json& body);

struct CompletionResult {
    std::vector<std::string> texts;
    int attempts = 0;  // 1 + number of retries performed
};

/// Thread-safe client; at most config.parallelism requests are in flight at once.
class ChatClient {
public:
    explicit ChatClient(EndpointConfig config);
    ~ChatClient();
    ChatClient(const ChatClient&) = delete;
    ChatClient& operator=(const ChatClient&) = delete;

    const EndpointConfig& config() const noexcept { return config_; }

    /// Returns exactly request.n texts or throws (TransportError / ConfigError).
    CompletionResult complete(const ChatRequest& request);

    /// Total HTTP attempts made by this client so far.
    long total_attempts() const noexcept { return total_attempts_.load(); }

private:
    struct Target;

    EndpointConfig config_;
    std::unique_ptr<Target> target_;
    std::counting_semaphore<> in_flight_;
    std::atomic<long> total_attempts_{0};
    std::atomic<std::uint64_t> jitter_state_{0x2545F4914F6CDD1DULL};
};

/// One-shot convenience wrapper around ChatClient.
CompletionResult complete(const EndpointConfig& endpoint, const ChatRequest& request);

/// Critic request for an arbitrary presentation order: @p first fills "Response 1".
ChatRequest render_critic_request(const Prompt& prompt, const CandidateResponse& first,
                                  const CandidateResponse& second);

/// Critic request with resp1 = response_a and resp2 = response_b.
ChatRequest render_critic_prompt(const PreferenceTuple& tuple);

/// Policy request asking for reasoning in <think></think> and the answer in \boxed{}.
ChatRequest render_thinking_request(const Prompt& prompt, const SamplingConfig& sampling);

ChatRequest render_verification_request(std::string_view question, std::string_view response, std::string_view gold);

/// Leading YES -> 1, NO -> 0 (case-insensitive, trailing punctuation allowed); anything else throws UnparseableReply.
int parse_yes_no(std::string_view reply);

/// Asks the endpoint whether @p response reaches @p gold. Returns 1 or 0.
int verify_answer(ChatClient& client, std::string_view question, std::string_view response, std::string_view gold);

/// Resolves an endpoint argument: a name from the config, or a bare http(s) URL using defaults.
EndpointConfig resolve_endpoint(const ResolvedConfig& config, const std::string& name_or_url);

} // namespace critickit
