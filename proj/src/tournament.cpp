// SPDX-License-Identifier: Apache-2.0

#include "critickit/tournament.hpp"

#include <algorithm>

#include "critickit/errors.hpp"
#include "critickit/pairs.hpp"

namespace critickit {

namespace {

Verdict judge_once(const Prompt& prompt, const CandidateResponse& first, const CandidateResponse& second,
                   const Judge& judge) {
    return parse_verdict(parse_trace(judge(make_judge_request(prompt, first, second))));
}

} // namespace

KnockoutResult knockout_select(const Prompt& prompt, const std::vector<CandidateResponse>& candidates,
                               const Judge& judge, const KnockoutOptions& options) {
    if (candidates.empty()) throw ConfigError("knockout needs at least one candidate");
    KnockoutLog log;
    std::size_t incumbent = 0;
    for (std::size_t challenger = 1; challenger < candidates.size(); ++challenger) {
        KnockoutRound round;
        round.incumbent_index = incumbent;
        round.challenger_index = challenger;
        round.incumbent_slot = 1;
        try {
            round.verdict = judge_once(prompt, candidates[incumbent], candidates[challenger], judge);
            if (options.swap_slots)
                round.swapped_verdict =
                    unswapped(judge_once(prompt, candidates[challenger], candidates[incumbent], judge), true);
        } catch (const TransportError&) {
            if (options.strict) throw;
            round.failed = true;
            round.verdict = Verdict::undecided;
        }
        const bool challenger_wins = round.verdict == Verdict::B &&
                                     (!round.swapped_verdict || *round.swapped_verdict == Verdict::B);
        round.winner_index = challenger_wins ? challenger : incumbent;
        incumbent = round.winner_index;
        log.rounds.push_back(round);
    }
    log.final_winner = incumbent;
    return KnockoutResult{candidates[incumbent], std::move(log)};
}

std::vector<CandidateResponse> sample_candidates(ChatClient& policy, const Prompt& prompt,
                                                 const SamplingConfig& sampling) {
    const auto result = policy.complete(render_thinking_request(prompt, sampling));
    std::vector<CandidateResponse> out;
    out.reserve(result.texts.size());
    for (const auto& text : result.texts) {
        if (count_tokens(text) == 0) throw TransportError("policy endpoint returned an empty completion");
        out.emplace_back(text, policy.config().model_name);
    }
    return out;
}

std::optional<std::string> majority_answer(const std::vector<CandidateResponse>& candidates, AnswerKind kind) {
    std::vector<std::pair<std::string, int>> tally;
    for (const auto& c : candidates) {
        CriticTrace t;
        t.pred = final_answer_text(c.text());
        auto answer = extract_prediction(t, kind);
        if (!answer) continue;
        auto it = std::find_if(tally.begin(), tally.end(), [&](const auto& e) { return e.first == *answer; });
        if (it == tally.end()) tally.emplace_back(*answer, 1);
        else ++it->second;
    }
    if (tally.empty()) return std::nullopt;
    auto best = tally.begin();
    for (auto it = tally.begin(); it != tally.end(); ++it)
        if (it->second > best->second) best = it;
    return best->first;
}

nlohmann::json to_json(const KnockoutLog& log) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : log.rounds) {
        nlohmann::json j{{"incumbent_index", r.incumbent_index},
                         {"challenger_index", r.challenger_index},
                         {"incumbent_slot", r.incumbent_slot},
                         {"verdict", std::string(to_string(r.verdict))},
                         {"winner_index", r.winner_index}};
        if (r.swapped_verdict) j["swapped_verdict"] = std::string(to_string(*r.swapped_verdict));
        if (r.failed) j["failed"] = true;
        rounds.push_back(std::move(j));
    }
    return nlohmann::json{{"rounds", rounds}, {"final_winner", log.final_winner}};
}

} // namespace critickit
