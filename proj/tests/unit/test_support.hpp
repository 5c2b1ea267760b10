// SPDX-License-Identifier: Apache-2.0
//
// nfsar - near-field freehand MIMO-SAR simulation and reconstruction toolkit
// Copyright (C) 2026 The nfsar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <catch_amalgamated.hpp>

#include <atomic>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "nfsar/error.hpp"
#include "nfsar/profile.hpp"

namespace nfsar::test
{

class HasCode : public Catch::Matchers::MatcherBase<Error>
{
public:
    explicit HasCode(ErrorCode code) : code_(code) {}
    bool match(const Error &e) const override { return e.code() == code_; }
    std::string describe() const override { return std::string("has error code ") + to_string(code_); }

private:
    ErrorCode code_;
};

#define REQUIRE_THROWS_CODE(expr, ec) REQUIRE_THROWS_MATCHES(expr, nfsar::Error, nfsar::test::HasCode(ec))

// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
    explicit TempDir(const std::string &tag)
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("nfsar_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;

    const std::filesystem::path &path() const { return path_; }
    std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Small MIMO setup that keeps a full pipeline run well under a second.
inline Profile tiny_profile()
{
    Profile p = desk_profile();
    p.name = "tiny";
    p.radar = RadarConfig::mimo_default(77e9, 81e9, 16);
    p.aperture = ApertureSpec{0.032, 0.032, 8, 8, 0.0};
    p.grid = GridSpec{16, 16, 0.2, 0.2, p.z0};
    p.n_train = 3;
    p.n_test = 2;
    return p;
}

} // namespace nfsar::test
