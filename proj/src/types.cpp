// SPDX-License-Identifier: Apache-2.0

#include "critickit/types.hpp"

#include <cctype>

#include "critickit/errors.hpp"
#include "json_fields.hpp"

namespace critickit {

using detail::join_path;
using detail::optional_string;
using detail::require_field;
using detail::require_object;
using detail::require_string;

std::string_view to_string(Preference p) noexcept { return p == Preference::A ? "A" : "B"; }

std::string_view to_string(AnswerKind k) noexcept {
    return k == AnswerKind::multiple_choice ? "multiple_choice" : "free_text";
}

std::optional<Preference> preference_from_string(std::string_view s) noexcept {
    if (s == "A") return Preference::A;
    if (s == "B") return Preference::B;
    return std::nullopt;
}

std::optional<AnswerKind> answer_kind_from_string(std::string_view s) noexcept {
    if (s == "multiple_choice") return AnswerKind::multiple_choice;
    if (s == "free_text") return AnswerKind::free_text;
    return std::nullopt;
}

std::size_t count_tokens(std::string_view text) noexcept {
    std::size_t count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        const bool space = std::isspace(c) != 0;
        if (!space && !in_token) ++count;
        in_token = !space;
    }
    return count;
}

CandidateResponse::CandidateResponse(std::string text, std::optional<std::string> source_model)
    : text_(std::move(text)), source_model_(std::move(source_model)), token_length_(count_tokens(text_)) {
    if (token_length_ == 0) throw ConfigError("candidate response text is empty");
}

void validate(const PreferenceTuple& t) {
    if (t.id.empty()) throw ConfigError("tuple id is empty");
    if (count_tokens(t.prompt.question) == 0) throw ConfigError("tuple " + t.id + ": question is empty");
    if (t.response_a.text() == t.response_b.text())
        throw ConfigError("tuple " + t.id + ": response_a and response_b are identical");
}

PreferenceTuple relabeled(const PreferenceTuple& t) {
    return PreferenceTuple{t.id, t.prompt, t.response_b, t.response_a, t.gold_answer, flipped(t.preference)};
}

AnswerKind infer_answer_kind(std::string_view gold) noexcept {
    if (gold.size() == 1 && gold[0] >= 'A' && gold[0] <= 'F') return AnswerKind::multiple_choice;
    return AnswerKind::free_text;
}

void validate(const QAItem& item) {
    if (count_tokens(item.prompt.question) == 0) throw ConfigError("qa item " + item.id + ": question is empty");
    if (item.gold_answer.empty()) throw ConfigError("qa item " + item.id + ": gold_answer is empty");
    if (item.answer_kind == AnswerKind::multiple_choice &&
        infer_answer_kind(item.gold_answer) != AnswerKind::multiple_choice)
        throw ConfigError("qa item " + item.id + ": multiple_choice gold_answer must be one letter A-F");
}

json to_json(const Prompt& p) {
    json j{{"question", p.question}, {"media", p.media}};
    if (p.subset_tag) j["subset_tag"] = *p.subset_tag;
    return j;
}

json to_json(const CandidateResponse& r) {
    json j{{"text", r.text()}, {"token_length", r.token_length()}};
    if (r.source_model()) j["source_model"] = *r.source_model();
    return j;
}

json to_json(const PreferenceTuple& t) {
    json j{{"id", t.id},
           {"prompt", to_json(t.prompt)},
           {"response_a", to_json(t.response_a)},
           {"response_b", to_json(t.response_b)},
           {"preference", std::string(to_string(t.preference))}};
    if (t.gold_answer) j["gold_answer"] = *t.gold_answer;
    return j;
}

json to_json(const QAItem& q) {
    return json{{"id", q.id},
                {"prompt", to_json(q.prompt)},
                {"gold_answer", q.gold_answer},
                {"answer_kind", std::string(to_string(q.answer_kind))}};
}

Prompt prompt_from_json(const json& j, std::size_t line, std::string_view path) {
    require_object(j, line, path);
    Prompt p;
    p.question = require_string(j, "question", line, path);
    if (count_tokens(p.question) == 0) throw SchemaError(line, join_path(path, "question"), "must be non-empty");
    if (auto it = j.find("media"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw SchemaError(line, join_path(path, "media"), "expected an array");
        for (const auto& m : *it) {
            if (!m.is_string()) throw SchemaError(line, join_path(path, "media"), "entries must be strings");
            p.media.push_back(m.get<std::string>());
        }
    }
    p.subset_tag = optional_string(j, "subset_tag", line, path);
    return p;
}

CandidateResponse response_from_json(const json& j, std::size_t line, std::string_view path) {
    require_object(j, line, path);
    std::string text = require_string(j, "text", line, path);
    if (count_tokens(text) == 0) throw SchemaError(line, join_path(path, "text"), "must be non-empty");
    CandidateResponse r(std::move(text), optional_string(j, "source_model", line, path));
    if (auto it = j.find("token_length"); it != j.end() && !it->is_null()) {
        if (!it->is_number_unsigned() || it->get<std::size_t>() != r.token_length())
            throw SchemaError(line, join_path(path, "token_length"),
                              "must equal the whitespace token count " + std::to_string(r.token_length()));
    }
    return r;
}

PreferenceTuple tuple_from_json(const json& j, std::size_t line) {
    require_object(j, line, "");
    std::string id = require_string(j, "id", line, "");
    if (id.empty()) throw SchemaError(line, "id", "must be non-empty");
    Prompt prompt = prompt_from_json(require_field(j, "prompt", line, ""), line, "prompt");
    CandidateResponse a = response_from_json(require_field(j, "response_a", line, ""), line, "response_a");
    CandidateResponse b = response_from_json(require_field(j, "response_b", line, ""), line, "response_b");
    auto gold = optional_string(j, "gold_answer", line, "");
    std::string pref_text = require_string(j, "preference", line, "");
    auto pref = preference_from_string(pref_text);
    if (!pref) throw SchemaError(line, "preference", "must be \"A\" or \"B\", got \"" + pref_text + "\"");
    if (a.text() == b.text()) throw SchemaError(line, "response_b", "must differ from response_a");
    return PreferenceTuple{std::move(id), std::move(prompt), std::move(a), std::move(b), std::move(gold), *pref};
}

QAItem qa_item_from_json(const json& j, std::size_t line) {
    require_object(j, line, "");
    QAItem q;
    q.id = require_string(j, "id", line, "");
    q.prompt = prompt_from_json(require_field(j, "prompt", line, ""), line, "prompt");
    q.gold_answer = require_string(j, "gold_answer", line, "");
    if (q.gold_answer.empty()) throw SchemaError(line, "gold_answer", "must be non-empty");
    if (auto kind = optional_string(j, "answer_kind", line, "")) {
        auto parsed = answer_kind_from_string(*kind);
        if (!parsed) throw SchemaError(line, "answer_kind", "must be multiple_choice or free_text");
        q.answer_kind = *parsed;
    } else {
        q.answer_kind = infer_answer_kind(q.gold_answer);
    }
    if (q.answer_kind == AnswerKind::multiple_choice &&
        infer_answer_kind(q.gold_answer) != AnswerKind::multiple_choice)
        throw SchemaError(line, "gold_answer", "multiple_choice answers must be one letter A-F");
    return q;
}

} // namespace critickit
