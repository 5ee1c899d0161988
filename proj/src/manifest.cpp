// SPDX-License-Identifier: Apache-2.0

#include "critickit/manifest.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>

#include <openssl/evp.h>

#include "critickit/errors.hpp"
#include "critickit/io.hpp"

namespace critickit {

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

std::string file_sha256(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string config_digest(const nlohmann::json& resolved) { return sha256_hex(resolved.dump()); }

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t secs = std::chrono::system_clock::to_time_t(now);
    const auto millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(millis));
    return buf;
}

nlohmann::json to_json(const RunManifest& m) {
    return nlohmann::json{{"command", m.command},         {"config_hash", m.config_hash},
                          {"seed", m.seed},               {"started_at", m.started_at},
                          {"finished_at", m.finished_at}, {"input_digests", m.input_digests},
                          {"version", m.version}};
}

} // namespace critickit
