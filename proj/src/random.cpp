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

#include "nfsar/random.hpp"

#include <cmath>
#include <numbers>

#include "nfsar/error.hpp"

namespace nfsar
{

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, SeedStream stream, std::uint64_t index) noexcept
{
    const auto tag = static_cast<std::uint64_t>(stream);
    return splitmix64(splitmix64(base ^ (tag * 0xd1b54a32d192ed03ULL)) + index);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi)
{
    require(hi >= lo, "uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1ULL;
    if (span == 0) // full 64-bit range
        return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % span);
    std::uint64_t r = engine_();
    while (r >= limit)
        r = engine_();
    return lo + static_cast<std::int64_t>(r % span);
}

double Rng::normal()
{
    if (has_cached_)
    {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

} // namespace nfsar
