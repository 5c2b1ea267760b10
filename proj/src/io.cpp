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

#include "nfsar/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>
#include <png.h>
#include <zlib.h>

#include "nfsar/error.hpp"

namespace nfsar
{

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::uint32_t crc32(std::span<const std::uint8_t> bytes)
{
    uLong c = ::crc32(0L, Z_NULL, 0);
    std::size_t off = 0;
    while (off < bytes.size())
    {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - off, 1u << 30));
        c = ::crc32(c, bytes.data() + off, chunk);
        off += chunk;
    }
    return static_cast<std::uint32_t>(c);
}

std::vector<std::uint8_t> read_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::io_error, "cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        fail(ErrorCode::io_error, "read failed for '" + path.string() + "'");
    return out;
}

void write_file(const fs::path &path, std::span<const std::uint8_t> bytes)
{
    if (path.has_parent_path())
    {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            fail(ErrorCode::io_error, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorCode::io_error, "cannot open '" + tmp.string() + "' for writing");
        out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out)
            fail(ErrorCode::io_error, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
        fail(ErrorCode::io_error, "cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string read_text(const fs::path &path)
{
    const auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

void write_text(const fs::path &path, const std::string &text)
{
    write_file(path, {reinterpret_cast<const std::uint8_t *>(text.data()), text.size()});
}

// ---------------------------------------------------------------------------
// Byte streams
// ---------------------------------------------------------------------------

void ByteWriter::put_bytes(const void *data, std::size_t n)
{
    const auto *p = static_cast<const std::uint8_t *>(data);
    buf_.insert(buf_.end(), p, p + n);
}

void ByteWriter::put_u32(std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_u64(std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_f32(float v)
{
    put_u32(std::bit_cast<std::uint32_t>(v));
}

void ByteWriter::put_f64(double v)
{
    put_u64(std::bit_cast<std::uint64_t>(v));
}

void ByteReader::get_bytes(void *out, std::size_t n)
{
    if (n > remaining())
        fail(ErrorCode::corrupt_data, "unexpected end of data at offset " + std::to_string(pos_));
    std::memcpy(out, data_.data() + pos_, n);
    pos_ += n;
}

std::uint32_t ByteReader::get_u32()
{
    std::uint8_t b[4];
    get_bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i)
        v = (v << 8) | b[i];
    return v;
}

std::uint64_t ByteReader::get_u64()
{
    std::uint8_t b[8];
    get_bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | b[i];
    return v;
}

float ByteReader::get_f32()
{
    return std::bit_cast<float>(get_u32());
}

double ByteReader::get_f64()
{
    return std::bit_cast<double>(get_u64());
}

void ByteReader::expect_magic(const char (&magic)[5])
{
    char got[4];
    get_bytes(got, 4);
    if (std::memcmp(got, magic, 4) != 0)
        fail(ErrorCode::corrupt_data, std::string("bad magic, expected '") + magic + "'");
}

// ---------------------------------------------------------------------------
// Images
// ---------------------------------------------------------------------------

void encode_image(ByteWriter &w, const SarImage &img)
{
    require(img.pixels.size() == img.grid.size(), "encode_image: pixel buffer does not match grid");
    w.put_bytes("NFSI", 4);
    w.put_u32(static_cast<std::uint32_t>(img.grid.nx));
    w.put_u32(static_cast<std::uint32_t>(img.grid.ny));
    w.put_f64(img.grid.width);
    w.put_f64(img.grid.height);
    w.put_f64(img.grid.plane_z);
    for (double v : img.pixels)
        w.put_f32(static_cast<float>(v));
}

SarImage decode_image(ByteReader &r)
{
    r.expect_magic("NFSI");
    SarImage img;
    img.grid.nx = r.get_u32();
    img.grid.ny = r.get_u32();
    img.grid.width = r.get_f64();
    img.grid.height = r.get_f64();
    img.grid.plane_z = r.get_f64();
    if (img.grid.nx < 8 || img.grid.ny < 8 || !(img.grid.width > 0.0) || !(img.grid.height > 0.0))
        fail(ErrorCode::corrupt_data, "image header holds an invalid grid");
    if (img.grid.size() * 4 > r.remaining())
        fail(ErrorCode::corrupt_data, "image payload truncated");
    img.pixels.resize(img.grid.size());
    for (auto &v : img.pixels)
    {
        v = r.get_f32();
        if (!std::isfinite(v))
            fail(ErrorCode::corrupt_data, "image holds a non-finite pixel");
    }
    return img;
}

void save_image(const fs::path &path, const SarImage &img)
{
    ByteWriter w;
    encode_image(w, img);
    write_file(path, w.bytes());
}

SarImage load_image(const fs::path &path)
{
    const auto bytes = read_file(path);
    ByteReader r(bytes);
    SarImage img = decode_image(r);
    if (r.remaining() != 0)
        fail(ErrorCode::corrupt_data, "trailing bytes after image in '" + path.string() + "'");
    return img;
}

void save_image_png(const fs::path &path, const SarImage &img)
{
    const std::size_t nx = img.grid.nx, ny = img.grid.ny;
    std::vector<std::uint8_t> gray(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
        {
            const double v = std::clamp(img.at(ix, iy), 0.0, 1.0);
            gray[(ny - 1 - iy) * nx + ix] = static_cast<std::uint8_t>(std::lround(v * 255.0));
        }

    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(nx);
    image.height = static_cast<png_uint_32>(ny);
    image.format = PNG_FORMAT_GRAY;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    if (!png_image_write_to_file(&image, path.c_str(), 0, gray.data(), static_cast<png_int_32>(nx), nullptr))
        fail(ErrorCode::io_error, "PNG export to '" + path.string() + "' failed: " + image.message);
}

// ---------------------------------------------------------------------------
// Raw and virtual data
// ---------------------------------------------------------------------------

namespace
{

std::vector<std::uint8_t> encode_samples(std::size_t n_rows, std::size_t n_freq, const std::vector<cdouble> &samples)
{
    require(n_rows <= 0xffffffffu && n_freq <= 0xffffffffu, "raw data too large for the v1 format");
    ByteWriter w;
    w.put_bytes("NFSR", 4);
    w.put_u32(kRawFormatVersion);
    w.put_u32(static_cast<std::uint32_t>(n_rows));
    w.put_u32(static_cast<std::uint32_t>(n_freq));
    for (const auto &s : samples)
    {
        w.put_f32(static_cast<float>(s.real()));
        w.put_f32(static_cast<float>(s.imag()));
    }
    return w.take();
}

std::vector<cdouble> decode_samples(const std::vector<std::uint8_t> &bytes, std::size_t &n_rows, std::size_t &n_freq)
{
    ByteReader r(bytes);
    r.expect_magic("NFSR");
    const auto version = r.get_u32();
    if (version != kRawFormatVersion)
        fail(ErrorCode::corrupt_data, "unsupported raw data version " + std::to_string(version));
    n_rows = r.get_u32();
    n_freq = r.get_u32();
    if (r.remaining() != n_rows * n_freq * 8)
        fail(ErrorCode::corrupt_data, "raw data payload size does not match header");
    std::vector<cdouble> samples(n_rows * n_freq);
    for (auto &s : samples)
    {
        const float re = r.get_f32();
        const float im = r.get_f32();
        s = {re, im};
    }
    return samples;
}

ojson parse_manifest(const fs::path &path)
{
    try
    {
        return ojson::parse(read_text(path));
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, "manifest '" + path.string() + "': " + e.what());
    }
}

} // namespace

fs::path manifest_path_for(const fs::path &bin_path)
{
    fs::path p = bin_path;
    p += ".json";
    return p;
}

void save_raw(const fs::path &bin_path, const RawData &raw, const RawManifestRefs &refs)
{
    raw.validate();
    write_file(bin_path, encode_samples(raw.n_measurements(), raw.n_freq(), raw.samples));

    ojson m;
    m["format"] = "nfsar-raw";
    m["version"] = kRawFormatVersion;
    m["data"] = bin_path.filename().string();
    m["n_meas"] = raw.n_measurements();
    m["n_freq"] = raw.n_freq();
    m["layout"] = {{"n_poses", raw.n_poses}, {"n_tx", raw.n_tx}, {"n_rx", raw.n_rx}};
    m["freq_grid_hz"] = raw.freq_grid;
    m["trajectory"] = refs.trajectory;
    m["trajectory_ref"] = raw.trajectory_ref;
    if (refs.radar)
        m["radar"] = ojson::parse(radar_to_json(*refs.radar));
    write_text(manifest_path_for(bin_path), m.dump(1) + "\n");
}

RawData load_raw(const fs::path &bin_path)
{
    const auto m = parse_manifest(manifest_path_for(bin_path));
    RawData raw;
    try
    {
        if (m.at("format").get<std::string>() != "nfsar-raw")
            fail(ErrorCode::corrupt_data, "'" + bin_path.string() + "' is not raw data");
        raw.n_poses = m.at("layout").at("n_poses").get<std::size_t>();
        raw.n_tx = m.at("layout").at("n_tx").get<std::size_t>();
        raw.n_rx = m.at("layout").at("n_rx").get<std::size_t>();
        raw.freq_grid = m.at("freq_grid_hz").get<std::vector<double>>();
        raw.trajectory_ref = m.value("trajectory_ref", "");
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, "raw manifest: " + std::string(e.what()));
    }

    std::size_t rows = 0, nf = 0;
    raw.samples = decode_samples(read_file(bin_path), rows, nf);
    if (rows != raw.n_measurements() || nf != raw.n_freq())
        fail(ErrorCode::corrupt_data, "raw data header does not match its manifest");
    raw.validate();
    return raw;
}

void save_virtual(const fs::path &bin_path, const VirtualMonostaticData &virt)
{
    write_file(bin_path, encode_samples(virt.grid.size(), virt.n_freq(), virt.samples));
    ojson m;
    m["format"] = "nfsar-virtual";
    m["version"] = kRawFormatVersion;
    m["data"] = bin_path.filename().string();
    m["n_meas"] = virt.grid.size();
    m["n_freq"] = virt.n_freq();
    m["grid"] = {{"nx", virt.grid.nx},
                 {"ny", virt.grid.ny},
                 {"spacing", {virt.grid.spacing_x, virt.grid.spacing_y}},
                 {"origin", {virt.grid.origin_x, virt.grid.origin_y, virt.grid.z}}};
    m["freq_grid_hz"] = virt.freq_grid;
    m["occupancy"] = virt.occupancy;
    m["dropped"] = virt.dropped;
    write_text(manifest_path_for(bin_path), m.dump(1) + "\n");
}

VirtualMonostaticData load_virtual(const fs::path &bin_path)
{
    const auto m = parse_manifest(manifest_path_for(bin_path));
    VirtualMonostaticData v;
    try
    {
        if (m.at("format").get<std::string>() != "nfsar-virtual")
            fail(ErrorCode::corrupt_data, "'" + bin_path.string() + "' is not virtual monostatic data");
        const auto &g = m.at("grid");
        v.grid.nx = g.at("nx").get<std::size_t>();
        v.grid.ny = g.at("ny").get<std::size_t>();
        v.grid.spacing_x = g.at("spacing").at(0).get<double>();
        v.grid.spacing_y = g.at("spacing").at(1).get<double>();
        v.grid.origin_x = g.at("origin").at(0).get<double>();
        v.grid.origin_y = g.at("origin").at(1).get<double>();
        v.grid.z = g.at("origin").at(2).get<double>();
        v.freq_grid = m.at("freq_grid_hz").get<std::vector<double>>();
        v.occupancy = m.at("occupancy").get<std::vector<std::uint32_t>>();
        v.dropped = m.at("dropped").get<std::size_t>();
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, "virtual manifest: " + std::string(e.what()));
    }
    std::size_t rows = 0, nf = 0;
    v.samples = decode_samples(read_file(bin_path), rows, nf);
    if (rows != v.grid.size() || nf != v.n_freq() || v.occupancy.size() != v.grid.size())
        fail(ErrorCode::corrupt_data, "virtual data header does not match its manifest");
    return v;
}

FreehandTrajectory load_trajectory(const fs::path &path)
{
    return trajectory_from_json(read_text(path));
}

void save_trajectory(const fs::path &path, const FreehandTrajectory &traj)
{
    write_text(path, trajectory_to_json(traj));
}

Scene load_scene(const fs::path &path)
{
    return scene_from_json(read_text(path));
}

void save_scene(const fs::path &path, const Scene &scene)
{
    write_text(path, scene_to_json(scene));
}

} // namespace nfsar
