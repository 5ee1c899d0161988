// SPDX-License-Identifier: Apache-2.0

#include "critickit/trace.hpp"

#include <algorithm>
#include <cctype>

namespace critickit {

namespace {

constexpr std::string_view kBoxedOpen = "\\boxed{";
constexpr std::size_t kVerdictFallbackBytes = 200;

std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_alnum_ascii(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::isalnum(u) != 0;
}

} // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::A: return "A";
    case Verdict::B: return "B";
    case Verdict::undecided: break;
    }
    return "undecided";
}

std::optional<Verdict> verdict_from_string(std::string_view s) noexcept {
    if (s == "A") return Verdict::A;
    if (s == "B") return Verdict::B;
    if (s == "undecided") return Verdict::undecided;
    return std::nullopt;
}

std::optional<std::string> extract_tag(std::string_view raw, std::string_view tag) {
    const std::string open = "<" + std::string(tag) + ">";
    const std::string close = "</" + std::string(tag) + ">";
    const auto start = raw.find(open);
    if (start == std::string_view::npos) return std::nullopt;
    const auto body = start + open.size();
    const auto end = raw.find(close, body);
    if (end == std::string_view::npos) return std::nullopt;
    const std::string_view inner = raw.substr(body, end - body);
    if (inner.find(open) != std::string_view::npos) return std::nullopt;
    return std::string(inner);
}

std::optional<std::string> extract_last_boxed(std::string_view raw) {
    std::optional<std::string> last;
    std::size_t pos = 0;
    while ((pos = raw.find(kBoxedOpen, pos)) != std::string_view::npos) {
        const std::size_t body = pos + kBoxedOpen.size();
        int depth = 1;
        std::size_t i = body;
        for (; i < raw.size() && depth > 0; ++i) {
            if (raw[i] == '{') ++depth;
            else if (raw[i] == '}') --depth;
        }
        if (depth == 0) {
            last = std::string(raw.substr(body, i - 1 - body));
            pos = i;
        } else {
            // Unclosed: a later box may still be nested inside the open one.
            pos = body;
        }
    }
    return last;
}

CriticTrace parse_trace(std::string raw) {
    CriticTrace t;
    t.pred_think = extract_tag(raw, "pred_think");
    t.pred = extract_tag(raw, "pred");
    t.think = extract_tag(raw, "think");
    t.boxed_verdict = extract_last_boxed(raw);
    t.raw = std::move(raw);
    return t;
}

double format_reward(const CriticTrace& trace) noexcept {
    const bool tail = trace.think.has_value() && trace.boxed_verdict.has_value();
    if (!tail) return 0.0;
    if (trace.pred_think.has_value() && trace.pred.has_value()) return 1.0;
    return 0.5;
}

Verdict parse_verdict(const CriticTrace& trace) {
    std::string_view scope;
    if (trace.boxed_verdict) {
        scope = *trace.boxed_verdict;
    } else {
        scope = trace.raw;
        if (scope.size() > kVerdictFallbackBytes) scope = scope.substr(scope.size() - kVerdictFallbackBytes);
    }
    const std::string lowered = lowercase_ascii(scope);
    const bool first = lowered.find("response 1 is better") != std::string::npos;
    const bool second = lowered.find("response 2 is better") != std::string::npos;
    if (first == second) return Verdict::undecided;
    return first ? Verdict::A : Verdict::B;
}

std::optional<char> first_option_letter(std::string_view text) {
    auto scan = [&](char lo, char hi) -> std::optional<char> {
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[i];
            if (c < lo || c > hi) continue;
            const bool left_ok = i == 0 || !is_alnum_ascii(text[i - 1]);
            const bool right_ok = i + 1 == text.size() || !is_alnum_ascii(text[i + 1]);
            if (left_ok && right_ok) return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        return std::nullopt;
    };
    // Lowercase letters are ambiguous with the English article "a", so uppercase wins.
    if (auto upper = scan('A', 'F')) return upper;
    return scan('a', 'f');
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

std::optional<std::string> extract_prediction(const CriticTrace& trace, AnswerKind kind) {
    if (!trace.pred) return std::nullopt;
    if (kind == AnswerKind::multiple_choice) {
        auto letter = first_option_letter(*trace.pred);
        if (!letter) return std::nullopt;
        return std::string(1, *letter);
    }
    std::string collapsed = lowercase_ascii(collapse_whitespace(*trace.pred));
    if (collapsed.empty()) return std::nullopt;
    return collapsed;
}

nlohmann::json to_json(const CriticTrace& trace) {
    auto opt = [](const std::optional<std::string>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return nlohmann::json{{"pred_think", opt(trace.pred_think)},
                          {"pred", opt(trace.pred)},
                          {"think", opt(trace.think)},
                          {"boxed_verdict", opt(trace.boxed_verdict)},
                          {"raw", trace.raw}};
}

} // namespace critickit
