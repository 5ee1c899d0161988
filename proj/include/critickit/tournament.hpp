// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file tournament.hpp
/// @brief Best-of-N selection by sequential pairwise knockout.
///
/// Round k judges the current incumbent (always in the Response 1 slot) against
/// candidate k+1 (Response 2). The challenger advances only on a decided win;
/// undecided verdicts keep the incumbent. N candidates take exactly N-1 rounds.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "critickit/config.hpp"
#include "critickit/gateway.hpp"
#include "critickit/judge.hpp"
#include "critickit/trace.hpp"
#include "critickit/types.hpp"

namespace critickit {

struct KnockoutRound {
    std::size_t incumbent_index = 0;
    std::size_t challenger_index = 0;
    int incumbent_slot = 1;
    // A = incumbent preferred, B = challenger preferred.
    Verdict verdict = Verdict::undecided;
    // Verdict with the challenger in slot 1 (swap_slots only), already mapped back to A/B above.
    std::optional<Verdict> swapped_verdict;
    std::size_t winner_index = 0;
    bool failed = false;
};

struct KnockoutLog {
    std::vector<KnockoutRound> rounds;
    std::size_t final_winner = 0;
};

struct KnockoutOptions {
    // Also judge with the challenger in slot 1; the challenger must win both orders.
    bool swap_slots = false;
    // When false, a TransportError in a round keeps the incumbent and marks the round failed.
    bool strict = true;
};

struct KnockoutResult {
    CandidateResponse winner;
    KnockoutLog log;
};

/// Throws ConfigError for an empty candidate list.
KnockoutResult knockout_select(const Prompt& prompt, const std::vector<CandidateResponse>& candidates,
                               const Judge& judge, const KnockoutOptions& options = {});

/// Draws sampling.num_samples responses from the policy endpoint with the thinking prompt.
std::vector<CandidateResponse> sample_candidates(ChatClient& policy, const Prompt& prompt,
                                                 const SamplingConfig& sampling);

/// Most frequent extracted final answer (first seen on ties); none when no answer is extractable.
std::optional<std::string> majority_answer(const std::vector<CandidateResponse>& candidates, AnswerKind kind);

nlohmann::json to_json(const KnockoutLog& log);

} // namespace critickit
