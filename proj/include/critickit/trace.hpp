// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file trace.hpp
/// @brief Parsing of self-referential critic outputs.
///
/// A complete critic output has the shape
///
///     <pred_think>...</pred_think><pred>...</pred><think>...</think>\boxed{Response N is better}
///
/// Each tag pair is taken from its first well-formed occurrence; the verdict comes
/// from the last brace-balanced \boxed{...}. Nothing here throws on any input.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "critickit/types.hpp"

namespace critickit {

struct CriticTrace {
    std::optional<std::string> pred_think;
    std::optional<std::string> pred;
    std::optional<std::string> think;
    std::optional<std::string> boxed_verdict;
    std::string raw;

    bool operator==(const CriticTrace&) const = default;
};

enum class Verdict { A, B, undecided };

std::string_view to_string(Verdict v) noexcept;
std::optional<Verdict> verdict_from_string(std::string_view s) noexcept;

inline bool decided(Verdict v) noexcept { return v != Verdict::undecided; }

/// Maps a slot verdict back to the original labels when the responses were presented swapped.
inline Verdict unswapped(Verdict v, bool swapped) noexcept {
    if (!swapped || v == Verdict::undecided) return v;
    return v == Verdict::A ? Verdict::B : Verdict::A;
}

inline bool matches(Verdict v, Preference p) noexcept {
    return (v == Verdict::A && p == Preference::A) || (v == Verdict::B && p == Preference::B);
}

/// Content of the first `<tag>...</tag>` span, absent when unmatched or when the
/// span contains a second opening tag of the same name.
std::optional<std::string> extract_tag(std::string_view raw, std::string_view tag);

/// Content of the last top-level brace-balanced `\boxed{...}`.
std::optional<std::string> extract_last_boxed(std::string_view raw);

CriticTrace parse_trace(std::string raw);

/// 1.0 for the full self-referential structure, 0.5 when think and boxed are present
/// without the complete pred_think/pred pair, 0 otherwise.
double format_reward(const CriticTrace& trace) noexcept;

/// Looks for "response 1 is better" / "response 2 is better" (case-insensitive) in the
/// boxed verdict, or in the last 200 bytes of raw when no \boxed{} was found.
/// Both or neither phrase yields undecided.
Verdict parse_verdict(const CriticTrace& trace);

/// First standalone option letter A-F (uppercase preferred) for multiple choice;
/// trimmed, whitespace-collapsed text for free text.
std::optional<std::string> extract_prediction(const CriticTrace& trace, AnswerKind kind);

/// Normalization helpers shared with the reward engine.
std::optional<char> first_option_letter(std::string_view text);
std::string collapse_whitespace(std::string_view text);

nlohmann::json to_json(const CriticTrace& trace);

} // namespace critickit
