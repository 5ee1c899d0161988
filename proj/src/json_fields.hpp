// SPDX-License-Identifier: Apache-2.0

#pragma once

// Field accessors that turn JSON shape problems into SchemaError.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "critickit/errors.hpp"

namespace critickit::detail {

using json = nlohmann::json;

inline std::string join_path(std::string_view parent, std::string_view key) {
    if (parent.empty()) return std::string(key);
    return std::string(parent) + "." + std::string(key);
}

inline const json& require_object(const json& j, std::size_t line, std::string_view path) {
    if (!j.is_object()) throw SchemaError(line, std::string(path.empty() ? "<record>" : path), "expected an object");
    return j;
}

inline const json& require_field(const json& j, std::string_view key, std::size_t line, std::string_view parent) {
    auto it = j.find(std::string(key));
    if (it == j.end() || it->is_null()) throw SchemaError(line, join_path(parent, key), "missing");
    return *it;
}

inline std::string require_string(const json& j, std::string_view key, std::size_t line, std::string_view parent) {
    const json& v = require_field(j, key, line, parent);
    if (!v.is_string()) throw SchemaError(line, join_path(parent, key), "expected a string");
    return v.get<std::string>();
}

inline std::optional<std::string> optional_string(const json& j, std::string_view key, std::size_t line,
                                                  std::string_view parent) {
    auto it = j.find(std::string(key));
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw SchemaError(line, join_path(parent, key), "expected a string");
    return it->get<std::string>();
}

} // namespace critickit::detail
