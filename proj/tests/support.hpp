// SPDX-License-Identifier: Apache-2.0
// Shared helpers for the test binaries.

#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include <httplib.h>

#include "critickit/io.hpp"
#include "critickit/types.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(CRITICKIT_FIXTURE_DIR) / name;
}

inline std::filesystem::path golden(const std::string& name) {
    return std::filesystem::path(CRITICKIT_GOLDEN_DIR) / name;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                ("critickit-test-" + std::to_string(stamp) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name, const std::string& contents) const {
        critickit::write_file(path_ / name, contents);
        return path_ / name;
    }

private:
    std::filesystem::path path_;
};

inline critickit::PreferenceTuple make_pref_tuple(std::string id, std::string a, std::string b, critickit::Preference p,
                                             std::optional<std::string> subset = std::nullopt,
                                             std::optional<std::string> gold = std::nullopt) {
    return critickit::PreferenceTuple{std::move(id),
                                      critickit::Prompt{"Which is right?", {}, std::move(subset)},
                                      critickit::CandidateResponse(std::move(a)),
                                      critickit::CandidateResponse(std::move(b)),
                                      std::move(gold),
                                      p};
}

/// httplib server on an ephemeral localhost port, running on a background thread.
class StubServer {
public:
    explicit StubServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
        server_.Post(R"(/.*)", [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
            handler(req, res);
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubServer() {
        server_.stop();
        thread_.join();
    }
    StubServer(const StubServer&) = delete;
    StubServer& operator=(const StubServer&) = delete;

    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

} // namespace testing
