// SPDX-License-Identifier: Apache-2.0

#include "critickit/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "critickit/errors.hpp"

namespace critickit {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading " + path.string());
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t line)>& on_record) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw SchemaError(line, "<record>", "not valid JSON");
        on_record(j, line);
    }
    if (in.bad()) throw IoError("failed reading " + path.string());
}

std::vector<PreferenceTuple> load_tuples(const std::filesystem::path& path) {
    std::vector<PreferenceTuple> out;
    std::unordered_set<std::string> seen;
    for_each_jsonl(path, [&](const json& j, std::size_t line) {
        PreferenceTuple t = tuple_from_json(j, line);
        if (!seen.insert(t.id).second) throw SchemaError(line, "id", "duplicate id \"" + t.id + "\"");
        out.push_back(std::move(t));
    });
    return out;
}

std::vector<QAItem> load_qa_items(const std::filesystem::path& path) {
    std::vector<QAItem> out;
    std::unordered_set<std::string> seen;
    for_each_jsonl(path, [&](const json& j, std::size_t line) {
        QAItem q = qa_item_from_json(j, line);
        if (!seen.insert(q.id).second) throw SchemaError(line, "id", "duplicate id \"" + q.id + "\"");
        out.push_back(std::move(q));
    });
    return out;
}

std::string dump_compact(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

std::string dump_pretty(const json& j) { return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n"; }

std::string to_jsonl(const std::vector<json>& records) {
    std::string out;
    for (const auto& r : records) {
        out += dump_compact(r);
        out += '\n';
    }
    return out;
}

} // namespace critickit
