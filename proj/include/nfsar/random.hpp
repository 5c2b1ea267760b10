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

#include <cstdint>
#include <random>

namespace nfsar
{

// Stream tags for seed derivation. Each consumer of randomness draws from its own stream so
// results never depend on the order in which modules are called.
enum class SeedStream : std::uint64_t
{
    scene = 1,
    trajectory_jitter = 2,
    perturbation = 3,
    noise = 4,
    degradation = 5,
    dataset_train = 6,
    dataset_test = 7,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Counter-based split: a pure function of (base, stream, index).
std::uint64_t derive_seed(std::uint64_t base, SeedStream stream, std::uint64_t index = 0) noexcept;

// Portable random source. The engine is std::mt19937_64 (fully specified by the standard);
// the uniform/normal transforms are implemented here because the standard distributions are
// implementation-defined, which would break byte-identical datasets across toolchains.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] (inclusive), unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Standard normal via Box-Muller; the second variate is cached.
    double normal();

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace nfsar
