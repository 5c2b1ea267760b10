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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nfsar/empm.hpp"
#include "nfsar/forward_model.hpp"
#include "nfsar/geometry.hpp"
#include "nfsar/scene.hpp"

namespace nfsar
{

// All binary formats are little-endian.
//
// SarImage ("NFSI"):
//   char[4] magic | u32 nx | u32 ny | f64 extent_w | f64 extent_h | f64 plane_z | f32 pixels[ny][nx]
//
// RawData ("NFSR"):
//   char[4] magic | u32 version | u32 n_meas | u32 n_freq | f32 (re, im) samples[n_meas][n_freq]
// plus a JSON manifest next to it (<file>.json) carrying the frequency grid, the (pose, tx, rx)
// layout and references to the trajectory and radar configuration. VirtualMonostaticData reuses
// the RawData binary (one row per grid cell) with a grid-geometry manifest.

inline constexpr std::uint32_t kRawFormatVersion = 1;

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
// Writes through a temporary file and renames, so readers never observe a partial file.
void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);
std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, const std::string &text);

class ByteWriter
{
public:
    void put_bytes(const void *data, std::size_t n);
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_f32(float v);
    void put_f64(double v);

    const std::vector<std::uint8_t> &bytes() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

// Bounds-checked reader; running past the end throws corrupt_data.
class ByteReader
{
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : data_(bytes) {}

    void get_bytes(void *out, std::size_t n);
    std::uint32_t get_u32();
    std::uint64_t get_u64();
    float get_f32();
    double get_f64();
    void expect_magic(const char (&magic)[5]);

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

void encode_image(ByteWriter &w, const SarImage &img);
SarImage decode_image(ByteReader &r);

void save_image(const std::filesystem::path &path, const SarImage &img);
SarImage load_image(const std::filesystem::path &path);
// 8-bit grayscale, +y up.
void save_image_png(const std::filesystem::path &path, const SarImage &img);

struct RawManifestRefs
{
    std::string trajectory; // path of the trajectory JSON, if any
    const RadarConfig *radar = nullptr;
};

std::filesystem::path manifest_path_for(const std::filesystem::path &bin_path);

void save_raw(const std::filesystem::path &bin_path, const RawData &raw, const RawManifestRefs &refs = {});
RawData load_raw(const std::filesystem::path &bin_path);

void save_virtual(const std::filesystem::path &bin_path, const VirtualMonostaticData &virt);
VirtualMonostaticData load_virtual(const std::filesystem::path &bin_path);

FreehandTrajectory load_trajectory(const std::filesystem::path &path);
void save_trajectory(const std::filesystem::path &path, const FreehandTrajectory &traj);
Scene load_scene(const std::filesystem::path &path);
void save_scene(const std::filesystem::path &path, const Scene &scene);

} // namespace nfsar
