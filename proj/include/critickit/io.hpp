// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "critickit/types.hpp"

namespace critickit {

/// Calls @p on_record for every non-blank line of a JSON-lines file with its 1-based line number.
/// Throws IoError if the file cannot be read and SchemaError on malformed JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t line)>& on_record);

/// Loads preference tuples in file order. Duplicate ids are a SchemaError.
std::vector<PreferenceTuple> load_tuples(const std::filesystem::path& path);
std::vector<QAItem> load_qa_items(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Serializers that replace invalid UTF-8 instead of throwing.
std::string dump_compact(const json& j);
std::string dump_pretty(const json& j);

/// One compact JSON document per line.
std::string to_jsonl(const std::vector<json>& records);

} // namespace critickit
