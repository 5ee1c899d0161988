// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file judge.hpp
/// @brief Pairwise judges: callables that compare two responses and return raw critic text.

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "critickit/gateway.hpp"
#include "critickit/types.hpp"

namespace critickit {

/// One pairwise comparison as presented to a judge. `first` occupies the
/// "Response 1" slot of `rendered`, `second` the "Response 2" slot.
struct JudgeRequest {
    Prompt prompt;
    CandidateResponse first;
    CandidateResponse second;
    ChatRequest rendered;
};

JudgeRequest make_judge_request(const Prompt& prompt, const CandidateResponse& first, const CandidateResponse& second);

/// Returns the judge's raw output. May throw TransportError (recorded per the strict/lenient
/// policy of the caller) or ConfigError (always fatal).
using Judge = std::function<std::string(const JudgeRequest&)>;

enum class OracleKind { always_first, prefer_longer, prefer_lexicographic, keyword_match };

struct OracleSpec {
    OracleKind kind = OracleKind::always_first;
    std::string keyword;  // gold answer for keyword_match
};

/// Parses "always_first", "prefer_longer", "prefer_lexicographic" or "keyword_match:<gold>".
OracleSpec parse_oracle_spec(std::string_view spec);
std::string to_string(const OracleSpec& spec);

/// Deterministic local judge emitting a complete four-tag critic trace.
/// Ties (equal length, equal text, keyword in both or neither) go to Response 1.
Judge oracle_judge(const OracleSpec& spec);

/// Judge backed by a chat-completions endpoint; sends the rendered critic request.
Judge gateway_judge(std::shared_ptr<ChatClient> client);

/// Builds a well-formed critic output with the given verdict phrase inside \boxed{}.
std::string make_critic_output(std::string_view pred_think, std::string_view pred, std::string_view think,
                               std::string_view boxed);

} // namespace critickit
