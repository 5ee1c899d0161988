// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace critickit {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view data);
/// SHA-256 of a file's bytes. Throws IoError when unreadable.
std::string file_sha256(const std::filesystem::path& path);

/// Provenance record written alongside every command's outputs.
struct RunManifest {
    std::string command;
    std::string config_hash;  // sha256 of the canonical resolved-configuration JSON
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::map<std::string, std::string> input_digests;
    std::string version{kToolVersion};
};

/// Canonical (sorted-key, compact) dump hashed with SHA-256.
std::string config_digest(const nlohmann::json& resolved);

/// Current UTC time as ISO-8601 with milliseconds.
std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& m);

} // namespace critickit
