// SPDX-License-Identifier: Apache-2.0

#pragma once

/// @file types.hpp
/// @brief Shared value types for critic training and evaluation data.
///
/// Every type here is an immutable value once constructed. Factories validate
/// invariants and throw ConfigError (or SchemaError when decoding files).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace critickit {

using json = nlohmann::json;

enum class Preference { A, B };

enum class AnswerKind { multiple_choice, free_text };

std::string_view to_string(Preference p) noexcept;
std::string_view to_string(AnswerKind k) noexcept;
std::optional<Preference> preference_from_string(std::string_view s) noexcept;
std::optional<AnswerKind> answer_kind_from_string(std::string_view s) noexcept;

inline Preference flipped(Preference p) noexcept {
    return p == Preference::A ? Preference::B : Preference::A;
}

/// Number of whitespace-separated tokens in @p text.
std::size_t count_tokens(std::string_view text) noexcept;

/// A question plus opaque media references forwarded verbatim to remote models.
struct Prompt {
    std::string question;
    std::vector<std::string> media;
    std::optional<std::string> subset_tag;

    bool operator==(const Prompt&) const = default;
};

class CandidateResponse {
public:
    /// Throws ConfigError when @p text has no non-whitespace content.
    explicit CandidateResponse(std::string text, std::optional<std::string> source_model = std::nullopt);

    const std::string& text() const noexcept { return text_; }
    const std::optional<std::string>& source_model() const noexcept { return source_model_; }
    std::size_t token_length() const noexcept { return token_length_; }

    bool operator==(const CandidateResponse&) const = default;

private:
    std::string text_;
    std::optional<std::string> source_model_;
    std::size_t token_length_;
};

/// One pairwise critic instance: question, two responses, optional gold answer, and the preferred slot.
struct PreferenceTuple {
    std::string id;
    Prompt prompt;
    CandidateResponse response_a;
    CandidateResponse response_b;
    std::optional<std::string> gold_answer;
    Preference preference;

    const CandidateResponse& preferred() const noexcept {
        return preference == Preference::A ? response_a : response_b;
    }
    bool operator==(const PreferenceTuple&) const = default;
};

/// Checks tuple invariants; throws ConfigError on violation.
void validate(const PreferenceTuple& t);

/// Same tuple with response slots exchanged and the preference flipped.
PreferenceTuple relabeled(const PreferenceTuple& t);

struct QAItem {
    std::string id;
    Prompt prompt;
    std::string gold_answer;
    AnswerKind answer_kind = AnswerKind::free_text;

    bool operator==(const QAItem&) const = default;
};

void validate(const QAItem& item);

/// Multiple-choice when the gold answer is a single option letter A-F, free text otherwise.
AnswerKind infer_answer_kind(std::string_view gold) noexcept;

// JSON encoding. Decoders throw SchemaError naming the offending field; @p line
// is the 1-based source line reported in errors.
json to_json(const Prompt& p);
json to_json(const CandidateResponse& r);
json to_json(const PreferenceTuple& t);
json to_json(const QAItem& q);

Prompt prompt_from_json(const json& j, std::size_t line, std::string_view path = "prompt");
CandidateResponse response_from_json(const json& j, std::size_t line, std::string_view path);
PreferenceTuple tuple_from_json(const json& j, std::size_t line);
QAItem qa_item_from_json(const json& j, std::size_t line);

} // namespace critickit
