// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file pairs.hpp
/// @brief Preference-tuple construction from verified samples, and best/worst DPO pairs from win counts.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "critickit/judge.hpp"
#include "critickit/types.hpp"

namespace critickit {

struct ScoredResponse {
    CandidateResponse response;
    int is_correct = 0;
    std::string prompt_id;
    std::string verifier;  // provenance of is_correct
};

/// All sampled responses for one prompt.
struct ResponseGroup {
    std::string prompt_id;
    Prompt prompt;
    std::optional<std::string> gold_answer;
    std::vector<ScoredResponse> responses;
};

struct SkippedGroup {
    std::string prompt_id;
    std::string reason;
};

struct PairBuildResult {
    std::vector<PreferenceTuple> tuples;
    std::vector<SkippedGroup> skipped;
};

/// Per group: picks the (correct, incorrect) pair with the smallest |log(len_c / len_i)|
/// (first such pair in input order on ties), drops it if max/min token length exceeds
/// @p length_ratio_max, and puts the correct response in slot A or B by a seeded fair coin.
/// Coins are drawn once per emitted tuple, so the seed never changes which pairs are chosen.
PairBuildResult build_preference_tuples(const std::vector<ResponseGroup>& groups, double length_ratio_max,
                                        std::uint64_t seed);

/// wins(i, j) counts the comparisons in which response i was preferred over response j.
class WinMatrix {
public:
    explicit WinMatrix(std::size_t n) : n_(n), counts_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }
    int operator()(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }
    void add_win(std::size_t winner, std::size_t loser) { ++counts_[winner * n_ + loser]; }
    /// Row sums.
    std::vector<int> wins() const;

private:
    std::size_t n_;
    std::vector<int> counts_;
};

/// Judges every ordered pair (i, j), i != j, with i in the Response 1 slot.
/// Undecided verdicts award nothing. Throws ConfigError for fewer than two responses.
/// With @p strict false, TransportError leaves that comparison unscored.
WinMatrix score_all_ordered_pairs(const std::vector<CandidateResponse>& responses, const Prompt& prompt,
                                  const Judge& judge, std::size_t parallelism = 1, bool strict = true);

struct DpoPair {
    std::string prompt_id;
    CandidateResponse chosen;
    CandidateResponse rejected;
    std::size_t chosen_index = 0;
    std::size_t rejected_index = 0;
    int wins_chosen = 0;
    int wins_rejected = 0;
};

/// Argmax / argmin of the win vector (lowest index on ties); none when every count is equal.
std::optional<DpoPair> extract_dpo_pair(const std::vector<int>& wins, const std::vector<CandidateResponse>& responses,
                                        const std::string& prompt_id = {});

/// Labels records that arrive without is_correct. Returns 0/1 or throws.
using AnswerVerifier = std::function<int(const Prompt& prompt, const std::string& response, const std::string& gold)>;

struct LabelPolicy {
    // When false, unlabeled records without a gold answer load as incorrect (DPO input needs no labels).
    bool require_labels = true;
    AnswerVerifier verifier;          // empty: deterministic matcher
    std::string verifier_name = "deterministic-matcher";
};

/// Reads JSON lines {prompt_id, prompt, response, is_correct?, verifier?, gold_answer?} and
/// groups them by prompt_id in order of first appearance. Missing labels are filled by the
/// policy's verifier when a gold answer is available.
std::vector<ResponseGroup> load_response_groups(const std::filesystem::path& path, const LabelPolicy& labels = {});

/// Final answer of a policy response: last \boxed{}, else <answer></answer>, else the whole text.
std::string final_answer_text(const std::string& response_text);

/// Deterministic matcher used when a record carries no is_correct label.
int verify_deterministic(const std::string& response_text, const std::string& gold);

nlohmann::json to_json(const DpoPair& p);

} // namespace critickit
