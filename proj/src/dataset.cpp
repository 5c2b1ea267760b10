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

#include "nfsar/dataset.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "nfsar/empm.hpp"
#include "nfsar/error.hpp"
#include "nfsar/forward_model.hpp"
#include "nfsar/io.hpp"
#include "nfsar/parallel.hpp"
#include "nfsar/random.hpp"
#include "nfsar/reconstruction.hpp"

namespace nfsar
{

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

const char *to_string(Split split) noexcept
{
    return split == Split::train ? "train" : "test";
}

Split split_from_string(const std::string &s)
{
    if (s == "train")
        return Split::train;
    if (s == "test")
        return Split::test;
    fail(ErrorCode::invalid_argument, "unknown split '" + s + "'");
}

std::uint64_t sample_seed(std::uint64_t base_seed, Split split, std::size_t index)
{
    return derive_seed(base_seed, split == Split::train ? SeedStream::dataset_train : SeedStream::dataset_test, index);
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

DatasetSample make_sample(const Profile &profile, std::uint64_t seed)
{
    profile.validate();
    const auto &deg = profile.degradation;

    DatasetSample sample;
    SampleMeta &meta = sample.meta;
    meta.seed = seed;
    Rng draws(derive_seed(seed, SeedStream::degradation));
    meta.sigma = draws.uniform(deg.sigma_min, deg.sigma_max);
    meta.snr_db = draws.uniform(deg.snr_min_db, deg.snr_max_db);
    meta.z_span = draws.uniform(deg.z_span_min, deg.z_span_max);
    meta.jitter_sigma_xy = deg.jitter_sigma_xy;
    meta.jitter_smoothness = deg.jitter_smoothness;

    const Scene scene = random_scene(profile.scene, seed);
    meta.n_points = scene.points.size();
    meta.n_shapes = scene.shapes.size();
    for (const auto &s : scene.shapes)
        meta.shape_types.emplace_back(s.type_name());

    const auto scatterers = discretize_scene(scene, profile.grid);
    meta.n_scatterers = scatterers.size();

    const JitterSpec jitter{deg.jitter_sigma_xy, meta.z_span, deg.jitter_smoothness};
    const auto truth = make_freehand_trajectory(profile.aperture, profile.radar, jitter, seed, profile.z0);
    meta.trajectory_kind = to_string(truth.kind);

    RawData raw = synthesize(scatterers, truth, profile.radar);
    raw = add_noise(raw, meta.snr_db, seed);

    const auto estimate = perturb_trajectory(truth, PerturbationSpec{Vec3{meta.sigma, meta.sigma, meta.sigma}, seed});
    const auto virt = empm_compensate(raw, estimate, profile.z0);
    meta.dropped = virt.dropped;

    sample.input = rma(virt, profile.z0, profile.grid);
    sample.target = rasterize_ideal(scene, profile.grid);
    return sample;
}

// ---------------------------------------------------------------------------
// Sample files
// ---------------------------------------------------------------------------

namespace
{

ojson meta_to_json(const SampleMeta &m)
{
    ojson j;
    j["seed"] = m.seed;
    j["sigma"] = m.sigma;
    j["trajectory_kind"] = m.trajectory_kind;
    j["snr_db"] = m.snr_db;
    j["z_span"] = m.z_span;
    j["jitter_sigma_xy"] = m.jitter_sigma_xy;
    j["jitter_smoothness"] = m.jitter_smoothness;
    j["scene"] = {{"n_points", m.n_points},
                  {"n_shapes", m.n_shapes},
                  {"shape_types", m.shape_types},
                  {"n_scatterers", m.n_scatterers}};
    j["dropped"] = m.dropped;
    return j;
}

SampleMeta meta_from_json(const ojson &j)
{
    SampleMeta m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.sigma = j.at("sigma").get<double>();
    m.trajectory_kind = j.at("trajectory_kind").get<std::string>();
    m.snr_db = j.at("snr_db").get<double>();
    m.z_span = j.at("z_span").get<double>();
    m.jitter_sigma_xy = j.at("jitter_sigma_xy").get<double>();
    m.jitter_smoothness = j.at("jitter_smoothness").get<std::size_t>();
    const auto &s = j.at("scene");
    m.n_points = s.at("n_points").get<std::size_t>();
    m.n_shapes = s.at("n_shapes").get<std::size_t>();
    m.shape_types = s.at("shape_types").get<std::vector<std::string>>();
    m.n_scatterers = s.at("n_scatterers").get<std::size_t>();
    m.dropped = j.at("dropped").get<std::size_t>();
    return m;
}

} // namespace

std::vector<std::uint8_t> encode_sample(const DatasetSample &sample)
{
    require(sample.input.grid.nx == sample.target.grid.nx && sample.input.grid.ny == sample.target.grid.ny,
            "dataset sample: input and target grids differ");
    ByteWriter w;
    w.put_bytes("NFSS", 4);
    w.put_u32(kDatasetFormatVersion);
    w.put_u64(sample.meta.seed);
    encode_image(w, sample.input);
    encode_image(w, sample.target);
    const std::string meta = meta_to_json(sample.meta).dump();
    w.put_u32(static_cast<std::uint32_t>(meta.size()));
    w.put_bytes(meta.data(), meta.size());
    w.put_u32(crc32(w.bytes()));
    return w.take();
}

DatasetSample decode_sample(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4 + 4)
        fail(ErrorCode::corrupt_data, "dataset sample: file too short");
    const auto body = bytes.first(bytes.size() - 4);
    ByteReader trailer(bytes.last(4));
    if (trailer.get_u32() != crc32(body))
        fail(ErrorCode::corrupt_data, "dataset sample: checksum mismatch");

    ByteReader r(body);
    r.expect_magic("NFSS");
    const auto version = r.get_u32();
    if (version != kDatasetFormatVersion)
        fail(ErrorCode::corrupt_data, "dataset sample: unsupported version " + std::to_string(version));
    const auto seed = r.get_u64();

    DatasetSample s;
    s.input = decode_image(r);
    s.target = decode_image(r);
    const auto len = r.get_u32();
    std::string meta(len, '\0');
    r.get_bytes(meta.data(), len);
    if (r.remaining() != 0)
        fail(ErrorCode::corrupt_data, "dataset sample: trailing bytes");
    try
    {
        s.meta = meta_from_json(ojson::parse(meta));
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, std::string("dataset sample meta: ") + e.what());
    }
    if (s.meta.seed != seed)
        fail(ErrorCode::corrupt_data, "dataset sample: header seed disagrees with meta");
    if (s.input.grid.nx != s.target.grid.nx || s.input.grid.ny != s.target.grid.ny)
        fail(ErrorCode::corrupt_data, "dataset sample: input and target grids differ");
    return s;
}

void save_sample(const fs::path &path, const DatasetSample &sample)
{
    write_file(path, encode_sample(sample));
}

DatasetSample load_sample(const fs::path &path, std::optional<std::uint32_t> expected_crc)
{
    const auto bytes = read_file(path);
    if (expected_crc && crc32(bytes) != *expected_crc)
        fail(ErrorCode::corrupt_data, "dataset sample '" + path.string() + "': checksum does not match manifest");
    return decode_sample(bytes);
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

std::string manifest_to_json(const DatasetManifest &m)
{
    ojson j;
    j["format"] = "nfsar-dataset";
    j["format_version"] = m.format_version;
    j["base_seed"] = m.base_seed;
    j["complete"] = m.complete;
    j["profile"] = ojson::parse(profile_to_json(m.profile));
    j["splits"] = ojson::object();
    for (const Split split : {Split::train, Split::test})
    {
        ojson list = ojson::array();
        for (const auto &e : m.entries(split))
            list.push_back({{"file", e.file}, {"seed", e.seed}, {"crc32", e.crc32}, {"bytes", e.bytes}});
        j["splits"][to_string(split)] = {{"count", m.entries(split).size()}, {"samples", std::move(list)}};
    }
    return j.dump(1) + "\n";
}

DatasetManifest manifest_from_json(const std::string &text)
{
    try
    {
        const auto j = ojson::parse(text);
        if (j.at("format").get<std::string>() != "nfsar-dataset")
            fail(ErrorCode::corrupt_data, "manifest: not an nfsar dataset");
        DatasetManifest m;
        m.format_version = j.at("format_version").get<std::uint32_t>();
        if (m.format_version != kDatasetFormatVersion)
            fail(ErrorCode::corrupt_data, "manifest: unsupported format version");
        m.base_seed = j.at("base_seed").get<std::uint64_t>();
        m.complete = j.at("complete").get<bool>();
        m.profile = profile_from_json(j.at("profile").dump());
        for (const Split split : {Split::train, Split::test})
        {
            const auto &s = j.at("splits").at(to_string(split));
            auto &dst = split == Split::train ? m.train : m.test;
            for (const auto &e : s.at("samples"))
                dst.push_back({e.at("file").get<std::string>(), e.at("seed").get<std::uint64_t>(),
                               e.at("crc32").get<std::uint32_t>(), e.at("bytes").get<std::uint64_t>()});
            if (s.at("count").get<std::size_t>() != dst.size())
                fail(ErrorCode::corrupt_data, "manifest: sample count disagrees with the sample list");
        }
        return m;
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, std::string("manifest: ") + e.what());
    }
}

DatasetManifest load_manifest(const fs::path &root)
{
    return manifest_from_json(read_text(root / "manifest.json"));
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

namespace
{

std::string sample_file_name(Split split, std::size_t index)
{
    char name[32];
    std::snprintf(name, sizeof(name), "sample_%06zu.bin", index);
    return std::string(to_string(split)) + "/" + name;
}

// Returns the existing file's bytes when it is a valid sample for `seed`.
std::optional<std::vector<std::uint8_t>> reusable(const fs::path &path, std::uint64_t seed, const Profile &profile)
{
    std::error_code ec;
    if (!fs::is_regular_file(path, ec))
        return std::nullopt;
    try
    {
        auto bytes = read_file(path);
        const auto s = decode_sample(bytes);
        if (s.meta.seed != seed || s.input.grid != profile.grid || s.target.grid != profile.grid)
            return std::nullopt;
        return bytes;
    }
    catch (const Error &)
    {
        return std::nullopt;
    }
}

} // namespace

DatasetManifest generate_dataset(const Profile &profile, std::uint64_t base_seed, const fs::path &root,
                                 const ProgressFn &progress, std::size_t checkpoint_every)
{
    profile.validate();
    checkpoint_every = std::max<std::size_t>(checkpoint_every, 1);

    const fs::path manifest_path = root / "manifest.json";
    std::error_code ec;
    if (fs::exists(manifest_path, ec))
    {
        const auto previous = load_manifest(root);
        if (previous.base_seed != base_seed || profile_to_json(previous.profile) != profile_to_json(profile))
            fail(ErrorCode::invalid_state,
                 "dataset: '" + root.string() + "' holds a dataset generated with a different configuration");
    }

    DatasetManifest manifest;
    manifest.base_seed = base_seed;
    manifest.profile = profile;

    std::set<std::uint64_t> seen;
    for (const Split split : {Split::train, Split::test})
    {
        const std::size_t n = split == Split::train ? profile.n_train : profile.n_test;
        for (std::size_t i = 0; i < n; ++i)
            if (!seen.insert(sample_seed(base_seed, split, i)).second)
                fail(ErrorCode::generation_failure, "dataset: seed collision between samples");
    }

    auto checkpoint = [&] { write_text(manifest_path, manifest_to_json(manifest)); };

    try
    {
        for (const Split split : {Split::train, Split::test})
        {
            const std::size_t n = split == Split::train ? profile.n_train : profile.n_test;
            auto &entries = split == Split::train ? manifest.train : manifest.test;
            DatasetProgress prog{split, 0, n, 0};

            for (std::size_t batch = 0; batch < n; batch += checkpoint_every)
            {
                const std::size_t count = std::min(checkpoint_every, n - batch);
                std::vector<std::vector<std::uint8_t>> bytes(count);
                std::vector<char> fresh(count, 0);

                parallel_for(count, [&](std::size_t b, std::size_t e) {
                    for (std::size_t j = b; j < e; ++j)
                    {
                        const std::size_t index = batch + j;
                        const auto seed = sample_seed(base_seed, split, index);
                        if (auto existing = reusable(root / sample_file_name(split, index), seed, profile))
                        {
                            bytes[j] = std::move(*existing);
                            continue;
                        }
                        bytes[j] = encode_sample(make_sample(profile, seed));
                        fresh[j] = 1;
                    }
                });

                for (std::size_t j = 0; j < count; ++j)
                {
                    const std::size_t index = batch + j;
                    const auto name = sample_file_name(split, index);
                    if (fresh[j])
                        write_file(root / name, bytes[j]);
                    else
                        ++prog.reused;
                    entries.push_back({name, sample_seed(base_seed, split, index), crc32(bytes[j]),
                                       static_cast<std::uint64_t>(bytes[j].size())});
                }
                prog.done = batch + count;
                checkpoint();
                if (progress)
                    progress(prog);
            }
        }
    }
    catch (...)
    {
        try
        {
            checkpoint();
        }
        catch (...)
        {
        }
        throw;
    }

    manifest.complete = true;
    checkpoint();
    return manifest;
}

void iterate_split(const DatasetManifest &manifest, const fs::path &root, Split split,
                   const std::function<void(const DatasetSample &)> &visit)
{
    for (const auto &e : manifest.entries(split))
    {
        auto sample = load_sample(root / e.file, e.crc32);
        if (sample.meta.seed != e.seed)
            fail(ErrorCode::corrupt_data, "dataset: '" + e.file + "' holds a different sample than listed");
        visit(sample);
    }
}

void verify_dataset(const fs::path &root)
{
    const auto manifest = load_manifest(root);
    if (!manifest.complete)
        fail(ErrorCode::corrupt_data, "dataset: manifest marks the dataset as incomplete");
    if (manifest.train.size() != manifest.profile.n_train || manifest.test.size() != manifest.profile.n_test)
        fail(ErrorCode::corrupt_data, "dataset: split sizes disagree with the generation profile");
    for (const Split split : {Split::train, Split::test})
        iterate_split(manifest, root, split, [](const DatasetSample &) {});
}

} // namespace nfsar
