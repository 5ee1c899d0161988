// SPDX-License-Identifier: Apache-2.0

#include "critickit/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>

#include "critickit/errors.hpp"
#include "critickit/io.hpp"
#include "critickit/parallel.hpp"
#include "critickit/reward.hpp"
#include "critickit/trace.hpp"
#include "json_fields.hpp"

namespace critickit {

std::vector<int> WinMatrix::wins() const {
    std::vector<int> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i] += counts_[i * n_ + j];
    return out;
}

PairBuildResult build_preference_tuples(const std::vector<ResponseGroup>& groups, double length_ratio_max,
                                        std::uint64_t seed) {
    if (!(length_ratio_max >= 1.0)) throw ConfigError("length_ratio_max must be at least 1");
    std::mt19937_64 coin(seed);
    PairBuildResult result;
    for (const ResponseGroup& g : groups) {
        const ScoredResponse* best_correct = nullptr;
        const ScoredResponse* best_incorrect = nullptr;
        double best_gap = 0.0;
        bool has_correct = false;
        bool has_incorrect = false;
        for (const auto& c : g.responses) {
            if (c.is_correct != 1) continue;
            has_correct = true;
            for (const auto& i : g.responses) {
                if (i.is_correct != 0) continue;
                has_incorrect = true;
                if (c.response.text() == i.response.text()) continue;
                const double gap = std::abs(std::log(static_cast<double>(c.response.token_length()) /
                                                     static_cast<double>(i.response.token_length())));
                if (best_correct == nullptr || gap < best_gap) {
                    best_correct = &c;
                    best_incorrect = &i;
                    best_gap = gap;
                }
            }
        }
        if (!has_correct || !has_incorrect) {
            result.skipped.push_back({g.prompt_id, !has_correct ? "no correct response" : "no incorrect response"});
            continue;
        }
        if (best_correct == nullptr) {
            result.skipped.push_back({g.prompt_id, "correct and incorrect responses are textually identical"});
            continue;
        }
        const auto lc = best_correct->response.token_length();
        const auto li = best_incorrect->response.token_length();
        const double ratio = static_cast<double>(std::max(lc, li)) / static_cast<double>(std::min(lc, li));
        if (ratio > length_ratio_max) {
            std::ostringstream reason;
            reason << "closest length ratio " << ratio << " exceeds cap " << length_ratio_max;
            result.skipped.push_back({g.prompt_id, reason.str()});
            continue;
        }
        const bool correct_in_a = (coin() >> 63) == 0;
        PreferenceTuple t{g.prompt_id,
                          g.prompt,
                          correct_in_a ? best_correct->response : best_incorrect->response,
                          correct_in_a ? best_incorrect->response : best_correct->response,
                          g.gold_answer,
                          correct_in_a ? Preference::A : Preference::B};
        result.tuples.push_back(std::move(t));
    }
    return result;
}

WinMatrix score_all_ordered_pairs(const std::vector<CandidateResponse>& responses, const Prompt& prompt,
                                  const Judge& judge, std::size_t parallelism, bool strict) {
    const std::size_t n = responses.size();
    if (n < 2) throw ConfigError("scoring ordered pairs needs at least two responses");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) pairs.emplace_back(i, j);
    std::vector<Verdict> verdicts(pairs.size(), Verdict::undecided);
    parallel_for(pairs.size(), parallelism, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        try {
            verdicts[k] = parse_verdict(parse_trace(judge(make_judge_request(prompt, responses[i], responses[j]))));
        } catch (const TransportError&) {
            if (strict) throw;
        }
    });
    WinMatrix m(n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [i, j] = pairs[k];
        if (verdicts[k] == Verdict::A) m.add_win(i, j);
        else if (verdicts[k] == Verdict::B) m.add_win(j, i);
    }
    return m;
}

std::optional<DpoPair> extract_dpo_pair(const std::vector<int>& wins, const std::vector<CandidateResponse>& responses,
                                        const std::string& prompt_id) {
    if (wins.size() != responses.size()) throw ConfigError("win vector and responses differ in length");
    if (wins.empty()) return std::nullopt;
    // max_element / min_element return the first extreme, which is the lower-index tie-break.
    const auto best = static_cast<std::size_t>(std::max_element(wins.begin(), wins.end()) - wins.begin());
    const auto worst = static_cast<std::size_t>(std::min_element(wins.begin(), wins.end()) - wins.begin());
    if (wins[best] == wins[worst]) return std::nullopt;
    return DpoPair{prompt_id, responses[best], responses[worst], best, worst, wins[best], wins[worst]};
}

std::string final_answer_text(const std::string& response_text) {
    if (auto boxed = extract_last_boxed(response_text)) return *boxed;
    if (auto answer = extract_tag(response_text, "answer")) return *answer;
    return response_text;
}

int verify_deterministic(const std::string& response_text, const std::string& gold) {
    return answers_match(final_answer_text(response_text), gold, infer_answer_kind(gold)) ? 1 : 0;
}

std::vector<ResponseGroup> load_response_groups(const std::filesystem::path& path, const LabelPolicy& labels) {
    std::vector<ResponseGroup> groups;
    std::unordered_map<std::string, std::size_t> index;
    for_each_jsonl(path, [&](const json& j, std::size_t line) {
        detail::require_object(j, line, "");
        const std::string prompt_id = detail::require_string(j, "prompt_id", line, "");
        auto [it, inserted] = index.try_emplace(prompt_id, groups.size());
        if (inserted) {
            ResponseGroup g;
            g.prompt_id = prompt_id;
            g.prompt = prompt_from_json(detail::require_field(j, "prompt", line, ""), line, "prompt");
            groups.push_back(std::move(g));
        }
        ResponseGroup& g = groups[it->second];
        if (auto gold = detail::optional_string(j, "gold_answer", line, "")) {
            if (g.gold_answer && *g.gold_answer != *gold)
                throw SchemaError(line, "gold_answer", "conflicts with an earlier record for " + prompt_id);
            g.gold_answer = std::move(gold);
        }
        ScoredResponse s{response_from_json(detail::require_field(j, "response", line, ""), line, "response"), 0,
                         prompt_id, ""};
        if (auto label = j.find("is_correct"); label != j.end() && !label->is_null()) {
            if (!label->is_number_integer() || (label->get<int>() != 0 && label->get<int>() != 1))
                throw SchemaError(line, "is_correct", "must be 0 or 1");
            s.is_correct = label->get<int>();
            s.verifier = detail::optional_string(j, "verifier", line, "").value_or("provided");
        } else if (g.gold_answer) {
            s.is_correct = labels.verifier ? labels.verifier(g.prompt, s.response.text(), *g.gold_answer)
                                           : verify_deterministic(s.response.text(), *g.gold_answer);
            s.verifier = labels.verifier ? labels.verifier_name : "deterministic-matcher";
        } else if (labels.require_labels) {
            throw SchemaError(line, "is_correct", "missing and no gold_answer to verify against");
        } else {
            s.verifier = "unlabeled";
        }
        g.responses.push_back(std::move(s));
    });
    return groups;
}

nlohmann::json to_json(const DpoPair& p) {
    return nlohmann::json{{"prompt_id", p.prompt_id},       {"chosen", to_json(p.chosen)},
                          {"rejected", to_json(p.rejected)}, {"chosen_index", p.chosen_index},
                          {"rejected_index", p.rejected_index}, {"wins_chosen", p.wins_chosen},
                          {"wins_rejected", p.wins_rejected}};
}

} // namespace critickit
