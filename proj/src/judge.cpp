// SPDX-License-Identifier: Apache-2.0

#include "critickit/judge.hpp"

#include "critickit/errors.hpp"

namespace critickit {

JudgeRequest make_judge_request(const Prompt& prompt, const CandidateResponse& first, const CandidateResponse& second) {
    return JudgeRequest{prompt, first, second, render_critic_request(prompt, first, second)};
}

OracleSpec parse_oracle_spec(std::string_view spec) {
    if (spec == "always_first") return {OracleKind::always_first, {}};
    if (spec == "prefer_longer") return {OracleKind::prefer_longer, {}};
    if (spec == "prefer_lexicographic") return {OracleKind::prefer_lexicographic, {}};
    constexpr std::string_view kKeyword = "keyword_match:";
    if (spec.starts_with(kKeyword) && spec.size() > kKeyword.size())
        return {OracleKind::keyword_match, std::string(spec.substr(kKeyword.size()))};
    throw ConfigError("unknown oracle \"" + std::string(spec) +
                      "\" (expected always_first, prefer_longer, prefer_lexicographic, keyword_match:<gold>)");
}

std::string to_string(const OracleSpec& spec) {
    switch (spec.kind) {
    case OracleKind::always_first: return "always_first";
    case OracleKind::prefer_longer: return "prefer_longer";
    case OracleKind::prefer_lexicographic: return "prefer_lexicographic";
    case OracleKind::keyword_match: return "keyword_match:" + spec.keyword;
    }
    return "unknown";
}

std::string make_critic_output(std::string_view pred_think, std::string_view pred, std::string_view think,
                               std::string_view boxed) {
    std::string out;
    out += "<pred_think>";
    out += pred_think;
    out += "</pred_think>\n<pred>";
    out += pred;
    out += "</pred>\n<think>";
    out += think;
    out += "</think>\n\\boxed{";
    out += boxed;
    out += "}";
    return out;
}

Judge oracle_judge(const OracleSpec& spec) {
    return [spec](const JudgeRequest& req) -> std::string {
        const std::string& t1 = req.first.text();
        const std::string& t2 = req.second.text();
        bool second_wins = false;
        std::string rule;
        std::string pred = "N/A";
        switch (spec.kind) {
        case OracleKind::always_first:
            rule = "constant preference for the first slot";
            break;
        case OracleKind::prefer_longer:
            rule = "prefer the response with more characters";
            second_wins = t2.size() > t1.size();
            break;
        case OracleKind::prefer_lexicographic:
            rule = "prefer the lexicographically smaller response";
            second_wins = t2 < t1;
            break;
        case OracleKind::keyword_match: {
            rule = "prefer the response whose boxed answer is the gold answer";
            pred = spec.keyword;
            const std::string needle = "\\boxed{" + spec.keyword + "}";
            const bool in1 = t1.find(needle) != std::string::npos;
            const bool in2 = t2.find(needle) != std::string::npos;
            second_wins = in2 && !in1;
            break;
        }
        }
        const char* winner = second_wins ? "Response 2 is better" : "Response 1 is better";
        return make_critic_output("Oracle rule: " + rule + ".", pred,
                                  std::string("Applying the rule, ") + (second_wins ? "response 2" : "response 1") +
                                      " is preferred.",
                                  winner);
    };
}

Judge gateway_judge(std::shared_ptr<ChatClient> client) {
    return [client = std::move(client)](const JudgeRequest& req) -> std::string {
        return client->complete(req.rendered).texts.front();
    };
}

} // namespace critickit
