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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfsar/profile.hpp"
#include "nfsar/scene.hpp"

namespace nfsar
{

inline constexpr std::uint32_t kDatasetFormatVersion = 1;

enum class Split
{
    train,
    test,
};

const char *to_string(Split split) noexcept;
Split split_from_string(const std::string &s);

// Everything needed to re-run the pipeline for one sample, plus a scene summary.
struct SampleMeta
{
    std::uint64_t seed = 0;
    double sigma = 0.0;      // position-estimate error std, per axis
    std::string trajectory_kind = "freehand";
    double snr_db = 0.0;
    double z_span = 0.0;
    double jitter_sigma_xy = 0.0;
    std::size_t jitter_smoothness = 0;
    std::size_t n_points = 0;
    std::size_t n_shapes = 0;
    std::vector<std::string> shape_types;
    std::size_t n_scatterers = 0;
    std::size_t dropped = 0; // virtual samples that fell outside the EMPM grid

    bool operator==(const SampleMeta &) const = default;
};

struct DatasetSample
{
    SarImage input;  // EMPM + RMA reconstruction from the perturbed trajectory
    SarImage target; // ideal image
    SampleMeta meta;

    bool operator==(const DatasetSample &) const = default;
};

// Sample file ("NFSS"), little-endian:
//   char[4] magic | u32 version | u64 seed | SarImage input | SarImage target
//   | u32 meta_len | meta_len bytes of JSON | u32 crc32 of every preceding byte
std::vector<std::uint8_t> encode_sample(const DatasetSample &sample);
DatasetSample decode_sample(std::span<const std::uint8_t> bytes);

void save_sample(const std::filesystem::path &path, const DatasetSample &sample);
// Verifies the embedded CRC and, when given, the manifest CRC of the whole file.
DatasetSample load_sample(const std::filesystem::path &path, std::optional<std::uint32_t> expected_crc = std::nullopt);

// Seed of sample `index` in `split`; train and test draw from distinct streams.
std::uint64_t sample_seed(std::uint64_t base_seed, Split split, std::size_t index);

// Pure function of (profile, seed): scene -> discretize -> synthesize over the true freehand
// trajectory -> add noise -> EMPM + RMA with the perturbed (estimated) trajectory; target is
// the ideal rasterization.
DatasetSample make_sample(const Profile &profile, std::uint64_t seed);

struct SampleEntry
{
    std::string file; // relative to the dataset root
    std::uint64_t seed = 0;
    std::uint32_t crc32 = 0;
    std::uint64_t bytes = 0;

    bool operator==(const SampleEntry &) const = default;
};

struct DatasetManifest
{
    std::uint32_t format_version = kDatasetFormatVersion;
    std::uint64_t base_seed = 0;
    bool complete = false;
    Profile profile;
    std::vector<SampleEntry> train;
    std::vector<SampleEntry> test;

    const std::vector<SampleEntry> &entries(Split split) const { return split == Split::train ? train : test; }
};

std::string manifest_to_json(const DatasetManifest &manifest);
DatasetManifest manifest_from_json(const std::string &text);
DatasetManifest load_manifest(const std::filesystem::path &root);

struct DatasetProgress
{
    Split split;
    std::size_t done = 0;
    std::size_t total = 0;
    std::size_t reused = 0;
};
using ProgressFn = std::function<void(const DatasetProgress &)>;

// Generates (or resumes) a dataset under `root`: root/manifest.json, root/train/, root/test/.
// Valid existing sample files are kept. A partial manifest (complete = false) is checkpointed
// every `checkpoint_every` samples and on failure.
DatasetManifest generate_dataset(const Profile &profile, std::uint64_t base_seed, const std::filesystem::path &root,
                                 const ProgressFn &progress = {}, std::size_t checkpoint_every = 16);

// Streams the samples of one split in index order, verifying every checksum.
void iterate_split(const DatasetManifest &manifest, const std::filesystem::path &root, Split split,
                   const std::function<void(const DatasetSample &)> &visit);

// Checks counts and checksums of every file listed in the manifest. Throws corrupt_data.
void verify_dataset(const std::filesystem::path &root);

} // namespace nfsar
