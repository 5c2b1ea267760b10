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

// Command-line front end. Uses the C API only.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <iostream>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfsar/nfsar.h"

namespace
{

using ojson = nlohmann::ordered_json;

struct Failure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

void log_record(const char *level, const std::string &event, ojson fields = ojson::object())
{
    ojson j;
    j["level"] = level;
    j["event"] = event;
    for (auto it = fields.begin(); it != fields.end(); ++it)
        j[it.key()] = it.value();
    std::cerr << j.dump() << '\n';
}

void check(nfsar_status st)
{
    if (st != NFSAR_OK)
        throw Failure(std::string(nfsar_status_string(st)) + ": " + nfsar_last_error());
}

template <typename T, void (*Free)(T *)>
struct Deleter
{
    void operator()(T *p) const { Free(p); }
};

using Profile = std::unique_ptr<nfsar_profile, Deleter<nfsar_profile, nfsar_profile_free>>;
using Radar = std::unique_ptr<nfsar_radar, Deleter<nfsar_radar, nfsar_radar_free>>;
using Trajectory = std::unique_ptr<nfsar_trajectory, Deleter<nfsar_trajectory, nfsar_trajectory_free>>;
using Scene = std::unique_ptr<nfsar_scene, Deleter<nfsar_scene, nfsar_scene_free>>;
using Raw = std::unique_ptr<nfsar_raw, Deleter<nfsar_raw, nfsar_raw_free>>;
using Image = std::unique_ptr<nfsar_image, Deleter<nfsar_image, nfsar_image_free>>;

struct CString
{
    char *p = nullptr;
    ~CString() { nfsar_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

template <typename Handle, typename F>
Handle make(F &&f)
{
    typename Handle::pointer raw = nullptr;
    check(f(&raw));
    return Handle(raw);
}

struct Globals
{
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string profile = "desk";
};

Profile load_profile(const Globals &g)
{
    if (g.profile == "desk" || g.profile == "paper")
        return make<Profile>([&](nfsar_profile **o) { return nfsar_profile_create(g.profile.c_str(), o); });
    std::ifstream in(g.profile, std::ios::binary);
    if (!in)
        throw Failure("io-error: cannot read profile '" + g.profile + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return make<Profile>([&](nfsar_profile **o) { return nfsar_profile_from_json(text.c_str(), o); });
}

nfsar_grid profile_grid(const Profile &p)
{
    nfsar_grid grid{};
    check(nfsar_profile_grid(p.get(), &grid));
    return grid;
}

double profile_z0(const Profile &p)
{
    double z0 = 0.0;
    check(nfsar_profile_z0(p.get(), &z0));
    return z0;
}

void write_output(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw Failure("io-error: cannot write '" + path + "'");
}

void save_image(const Image &img, const std::string &out, const std::string &png)
{
    check(nfsar_image_save(img.get(), out.c_str()));
    if (!png.empty())
        check(nfsar_image_save_png(img.get(), png.c_str()));
}

// ---- scene ------------------------------------------------------------------------------

struct SceneOpts
{
    std::string out, in, ideal, png;
};

void scene_gen(const Globals &g, const SceneOpts &o)
{
    const auto prof = load_profile(g);
    const auto scene = make<Scene>([&](nfsar_scene **s) { return nfsar_scene_random(prof.get(), g.seed, s); });
    check(nfsar_scene_save(scene.get(), o.out.c_str()));
    std::size_t np = 0, ns = 0;
    check(nfsar_scene_counts(scene.get(), &np, &ns));
    if (!o.ideal.empty() || !o.png.empty())
    {
        const auto grid = profile_grid(prof);
        const auto img = make<Image>([&](nfsar_image **i) { return nfsar_scene_rasterize(scene.get(), &grid, i); });
        if (!o.ideal.empty())
            check(nfsar_image_save(img.get(), o.ideal.c_str()));
        if (!o.png.empty())
            check(nfsar_image_save_png(img.get(), o.png.c_str()));
    }
    log_record("info", "scene.gen", {{"seed", g.seed}, {"points", np}, {"shapes", ns}, {"out", o.out}});
}

void scene_render(const Globals &g, const SceneOpts &o)
{
    const auto prof = load_profile(g);
    const auto scene = make<Scene>([&](nfsar_scene **s) { return nfsar_scene_load(o.in.c_str(), s); });
    const auto grid = profile_grid(prof);
    const auto img = make<Image>([&](nfsar_image **i) { return nfsar_scene_rasterize(scene.get(), &grid, i); });
    save_image(img, o.out, o.png);
    log_record("info", "scene.render", {{"in", o.in}, {"out", o.out}});
}

// ---- trajectory -------------------------------------------------------------------------

struct TrajOpts
{
    std::string kind = "freehand";
    std::string out, in;
    double sigma_xy = -1.0;
    double z_span = 0.01;
    std::size_t smoothness = 8;
    double sigma = -1.0;
    std::vector<double> sigma_xyz;
};

void trajectory_gen(const Globals &g, const TrajOpts &o)
{
    const auto prof = load_profile(g);
    const auto radar = make<Radar>([&](nfsar_radar **r) { return nfsar_profile_radar(prof.get(), r); });
    nfsar_aperture ap{};
    check(nfsar_profile_aperture(prof.get(), &ap));
    const double z0 = profile_z0(prof);
    Trajectory traj;
    if (o.kind == "raster" || o.kind == "planar-raster")
    {
        traj = make<Trajectory>([&](nfsar_trajectory **t) { return nfsar_trajectory_raster(&ap, radar.get(), z0, t); });
    }
    else
    {
        double lambda = 0.0;
        check(nfsar_radar_center_wavelength(radar.get(), &lambda));
        const nfsar_jitter jitter{o.sigma_xy < 0.0 ? lambda / 8.0 : o.sigma_xy, o.z_span, o.smoothness};
        traj = make<Trajectory>(
            [&](nfsar_trajectory **t) { return nfsar_trajectory_freehand(&ap, radar.get(), &jitter, g.seed, z0, t); });
    }
    check(nfsar_trajectory_save(traj.get(), o.out.c_str()));
    std::size_t n = 0;
    check(nfsar_trajectory_counts(traj.get(), &n, nullptr, nullptr));
    log_record("info", "trajectory.gen", {{"kind", o.kind}, {"seed", g.seed}, {"poses", n}, {"out", o.out}});
}

void trajectory_perturb(const Globals &g, const TrajOpts &o)
{
    const auto traj = make<Trajectory>([&](nfsar_trajectory **t) { return nfsar_trajectory_load(o.in.c_str(), t); });
    double sx = o.sigma, sy = o.sigma, sz = o.sigma;
    if (!o.sigma_xyz.empty())
    {
        sx = o.sigma_xyz[0];
        sy = o.sigma_xyz[1];
        sz = o.sigma_xyz[2];
    }
    else if (o.sigma < 0.0)
    {
        const auto prof = load_profile(g);
        const auto radar = make<Radar>([&](nfsar_radar **r) { return nfsar_profile_radar(prof.get(), r); });
        double lambda = 0.0;
        check(nfsar_radar_center_wavelength(radar.get(), &lambda));
        sx = sy = sz = lambda / 8.0;
    }
    const auto est = make<Trajectory>(
        [&](nfsar_trajectory **t) { return nfsar_trajectory_perturb(traj.get(), sx, sy, sz, g.seed, t); });
    check(nfsar_trajectory_save(est.get(), o.out.c_str()));
    log_record("info", "trajectory.perturb",
               {{"in", o.in}, {"out", o.out}, {"seed", g.seed}, {"sigma", {sx, sy, sz}}});
}

// ---- simulate ---------------------------------------------------------------------------

struct SimOpts
{
    std::string scene, traj, out;
    double snr_db = std::numeric_limits<double>::infinity();
};

void simulate(const Globals &g, const SimOpts &o)
{
    const auto prof = load_profile(g);
    const auto radar = make<Radar>([&](nfsar_radar **r) { return nfsar_profile_radar(prof.get(), r); });
    const auto scene = make<Scene>([&](nfsar_scene **s) { return nfsar_scene_load(o.scene.c_str(), s); });
    const auto traj = make<Trajectory>([&](nfsar_trajectory **t) { return nfsar_trajectory_load(o.traj.c_str(), t); });
    const auto grid = profile_grid(prof);
    auto raw = make<Raw>([&](nfsar_raw **r) { return nfsar_synthesize(scene.get(), &grid, traj.get(), radar.get(), r); });
    if (!std::isinf(o.snr_db))
        raw = make<Raw>([&](nfsar_raw **r) { return nfsar_raw_add_noise(raw.get(), o.snr_db, g.seed, r); });
    check(nfsar_raw_save(raw.get(), o.out.c_str(), o.traj.c_str(), radar.get()));
    std::size_t n_meas = 0, n_freq = 0;
    check(nfsar_raw_dims(raw.get(), &n_meas, &n_freq));
    log_record("info", "simulate", {{"out", o.out}, {"n_meas", n_meas}, {"n_freq", n_freq},
                                    {"snr_db", std::isinf(o.snr_db) ? ojson("inf") : ojson(o.snr_db)}});
}

// ---- reconstruct ------------------------------------------------------------------------

struct ReconOpts
{
    std::string algo = "empm-rma";
    std::string raw, traj, out, png;
    double z0 = 0.0;
};

nfsar_algorithm parse_algorithm(const std::string &s)
{
    if (s == "bpa")
        return NFSAR_ALGO_BPA;
    if (s == "rma")
        return NFSAR_ALGO_RMA;
    return NFSAR_ALGO_EMPM_RMA;
}

void reconstruct(const Globals &g, const ReconOpts &o)
{
    const auto prof = load_profile(g);
    const auto raw = make<Raw>([&](nfsar_raw **r) { return nfsar_raw_load(o.raw.c_str(), r); });
    const auto traj = make<Trajectory>([&](nfsar_trajectory **t) { return nfsar_trajectory_load(o.traj.c_str(), t); });
    double z0 = o.z0;
    if (z0 <= 0.0 && nfsar_trajectory_z0(traj.get(), &z0) != NFSAR_OK)
        z0 = profile_z0(prof);
    auto grid = profile_grid(prof);
    nfsar_aperture ap{};
    check(nfsar_profile_aperture(prof.get(), &ap));
    grid.plane_z = ap.z + z0;
    const auto img = make<Image>(
        [&](nfsar_image **i) { return nfsar_reconstruct(parse_algorithm(o.algo), raw.get(), traj.get(), z0, &grid, i); });
    save_image(img, o.out, o.png);
    log_record("info", "reconstruct", {{"algo", o.algo}, {"z0", z0}, {"out", o.out}});
}

// ---- dataset ----------------------------------------------------------------------------

struct DatasetOpts
{
    std::string dir;
    long long n_train = -1;
    long long n_test = -1;
    std::size_t checkpoint_every = 16;
};

void progress(nfsar_split split, std::size_t done, std::size_t total, void *)
{
    log_record("info", "dataset.progress",
               {{"split", split == NFSAR_SPLIT_TRAIN ? "train" : "test"}, {"done", done}, {"total", total}});
}

void dataset_generate(const Globals &g, const DatasetOpts &o)
{
    auto prof = load_profile(g);
    if (o.n_train >= 0 || o.n_test >= 0)
    {
        std::size_t tr = 0, te = 0;
        {
            CString js;
            check(nfsar_profile_to_json(prof.get(), &js.p));
            const auto j = ojson::parse(js.str());
            tr = j.at("n_train").get<std::size_t>();
            te = j.at("n_test").get<std::size_t>();
        }
        if (o.n_train >= 0)
            tr = static_cast<std::size_t>(o.n_train);
        if (o.n_test >= 0)
            te = static_cast<std::size_t>(o.n_test);
        check(nfsar_profile_set_counts(prof.get(), tr, te));
    }
    check(nfsar_dataset_generate(prof.get(), g.seed, o.dir.c_str(), o.checkpoint_every, progress, nullptr));
    std::size_t tr = 0, te = 0;
    check(nfsar_dataset_split_size(o.dir.c_str(), NFSAR_SPLIT_TRAIN, &tr));
    check(nfsar_dataset_split_size(o.dir.c_str(), NFSAR_SPLIT_TEST, &te));
    log_record("info", "dataset.generate", {{"dir", o.dir}, {"base_seed", g.seed}, {"train", tr}, {"test", te}});
}

void dataset_verify(const DatasetOpts &o)
{
    check(nfsar_dataset_verify(o.dir.c_str()));
    log_record("info", "dataset.verify", {{"dir", o.dir}, {"ok", true}});
}

// ---- metrics ----------------------------------------------------------------------------

struct MetricsOpts
{
    std::string a, b, out;
};

void metrics(const MetricsOpts &o)
{
    const auto a = make<Image>([&](nfsar_image **i) { return nfsar_image_load(o.a.c_str(), i); });
    const auto b = make<Image>([&](nfsar_image **i) { return nfsar_image_load(o.b.c_str(), i); });
    double psnr = 0.0, rmse = 0.0, ncc = 0.0;
    check(nfsar_psnr(a.get(), b.get(), &psnr));
    check(nfsar_rmse(a.get(), b.get(), &rmse));
    check(nfsar_ncc(a.get(), b.get(), &ncc));
    std::string text;
    for (const auto &[name, value] : {std::pair{"psnr_db", psnr}, {"rmse", rmse}, {"ncc", ncc}})
    {
        ojson j;
        j["metric"] = name;
        j["value"] = value;
        j["image_a"] = o.a;
        j["image_b"] = o.b;
        text += j.dump() + "\n";
    }
    write_output(o.out, text);
}

// ---- bench ------------------------------------------------------------------------------

struct BenchOpts
{
    nfsar_compare_spec spec = nfsar_compare_spec_default();
    std::string csv = "-";
    std::string jsonl;
};

void bench(const Globals &g, BenchOpts o)
{
    const auto prof = load_profile(g);
    o.spec.base_seed = g.seed;
    CString csv, jsonl;
    check(nfsar_compare(prof.get(), &o.spec, &csv.p, &jsonl.p));
    write_output(o.csv, csv.str());
    if (!o.jsonl.empty())
        write_output(o.jsonl, jsonl.str());
    CString machine;
    check(nfsar_machine_descriptor(&machine.p));
    log_record("info", "bench", {{"profile", g.profile}, {"scenes", o.spec.n_scenes}, {"machine", machine.str()}});
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"nfsar: near-field freehand MIMO-SAR simulation, reconstruction and dataset generation"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "TOML configuration file; command-line flags take precedence over it");
    app.set_version_flag("--version", nfsar_version());

    Globals g;
    app.add_option("--seed", g.seed, "Base seed");
    app.add_option("--threads", g.threads, "Worker threads (0: hardware concurrency)");
    app.add_option("--profile", g.profile, "Geometry/dataset profile: desk, paper or a profile JSON file")
        ->check(CLI::IsMember({"desk", "paper"}) | CLI::ExistingFile);

    std::string profile_out = "-";
    auto *prof = app.add_subcommand("profile", "Print the selected profile as JSON (editable, accepted by --profile)");
    prof->add_option("--out", profile_out, "Output path ('-': stdout)");

    // scene
    SceneOpts so;
    auto *scene = app.add_subcommand("scene", "Random scenes and ideal images");
    scene->require_subcommand(1);
    auto *sgen = scene->add_subcommand("gen", "Generate a random scene from --seed");
    sgen->add_option("--out", so.out, "Scene JSON path")->required();
    sgen->add_option("--ideal", so.ideal, "Also write the ideal image (SarImage binary)");
    sgen->add_option("--png", so.png, "Also write the ideal image as PNG");
    auto *srender = scene->add_subcommand("render", "Rasterize a scene file to its ideal image");
    srender->add_option("--in", so.in, "Scene JSON path")->required();
    srender->add_option("--out", so.out, "SarImage path")->required();
    srender->add_option("--png", so.png, "Also write a PNG");

    // trajectory
    TrajOpts to;
    auto *traj = app.add_subcommand("trajectory", "Sampling trajectories");
    traj->require_subcommand(1);
    auto *tgen = traj->add_subcommand("gen", "Generate the profile raster or a freehand trajectory");
    tgen->add_option("--kind", to.kind, "Trajectory kind")->check(CLI::IsMember({"raster", "planar-raster", "freehand"}));
    tgen->add_option("--out", to.out, "Trajectory JSON path")->required();
    tgen->add_option("--sigma-xy", to.sigma_xy, "In-plane jitter std in meters (< 0: lambda/8)");
    tgen->add_option("--z-span", to.z_span, "Peak-to-peak depth excursion in meters")->check(CLI::NonNegativeNumber);
    tgen->add_option("--smoothness", to.smoothness, "Jitter moving-average window in poses")->check(CLI::PositiveNumber);
    auto *tpert = traj->add_subcommand("perturb", "Write the estimated trajectory (Gaussian position error)");
    tpert->add_option("--in", to.in, "True trajectory JSON")->required();
    tpert->add_option("--out", to.out, "Estimated trajectory JSON")->required();
    auto *sig = tpert->add_option("--sigma", to.sigma, "Per-axis error std in meters (< 0: lambda/8)");
    tpert->add_option("--sigma-xyz", to.sigma_xyz, "Separate x y z error std in meters")->expected(3)->excludes(sig);

    // simulate
    SimOpts sim;
    auto *simc = app.add_subcommand("simulate", "Synthesize raw multistatic data for a scene and trajectory");
    simc->add_option("--scene", sim.scene, "Scene JSON")->required();
    simc->add_option("--traj", sim.traj, "True trajectory JSON")->required();
    simc->add_option("--out", sim.out, "Raw data binary (a .json manifest is written next to it)")->required();
    simc->add_option("--snr", sim.snr_db, "SNR in dB (inf: noise-free)");

    // reconstruct
    ReconOpts ro;
    auto *rec = app.add_subcommand("reconstruct", "Reconstruct an image from raw data");
    rec->add_option("--algo", ro.algo, "Algorithm")->check(CLI::IsMember({"bpa", "rma", "empm-rma"}));
    rec->add_option("--raw", ro.raw, "Raw data binary")->required();
    rec->add_option("--traj", ro.traj, "Estimated trajectory JSON")->required();
    rec->add_option("--out", ro.out, "SarImage path")->required();
    rec->add_option("--png", ro.png, "Also write a PNG");
    rec->add_option("--z0", ro.z0, "Standoff in meters (<= 0: trajectory, then profile)");

    // dataset
    DatasetOpts dso;
    auto *ds = app.add_subcommand("dataset", "Paired training datasets");
    ds->require_subcommand(1);
    auto *dgen = ds->add_subcommand("generate", "Generate or resume a dataset from --seed");
    dgen->add_option("--out", dso.dir, "Dataset directory")->required();
    dgen->add_option("--n-train", dso.n_train, "Training samples (< 0: profile default)");
    dgen->add_option("--n-test", dso.n_test, "Test samples (< 0: profile default)");
    dgen->add_option("--checkpoint-every", dso.checkpoint_every, "Samples per manifest checkpoint")
        ->check(CLI::PositiveNumber);
    auto *dver = ds->add_subcommand("verify", "Check manifest counts and checksums");
    dver->add_option("--dir", dso.dir, "Dataset directory")->required();

    // metrics
    MetricsOpts mo;
    auto *met = app.add_subcommand("metrics", "PSNR, RMSE and NCC between two images");
    met->add_option("--a", mo.a, "First SarImage")->required();
    met->add_option("--b", mo.b, "Second SarImage (reference)")->required();
    met->add_option("--out", mo.out, "JSON-lines output ('-': stdout)")->default_str("-");

    // bench
    BenchOpts bo;
    auto *bn = app.add_subcommand("bench", "BPA / EMPM / RMA comparison table (PSNR, RMSE, time)");
    bn->add_option("--scenes", bo.spec.n_scenes, "Number of random scenes")->check(CLI::PositiveNumber);
    bn->add_option("--reps", bo.spec.repetitions, "Timed runs per algorithm and scene")->check(CLI::PositiveNumber);
    bn->add_option("--sigma", bo.spec.sigma, "Position-error std in meters (< 0: lambda/8)");
    bn->add_option("--snr", bo.spec.snr_db, "SNR in dB");
    bn->add_option("--z-span", bo.spec.z_span, "Depth excursion of the freehand trajectory in meters")
        ->check(CLI::NonNegativeNumber);
    bn->add_option("--csv", bo.csv, "CSV table output ('-': stdout)");
    bn->add_option("--jsonl", bo.jsonl, "Per-image and aggregate JSON-lines records");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        nfsar_set_threads(g.threads);
        if (prof->parsed())
        {
            CString js;
            check(nfsar_profile_to_json(load_profile(g).get(), &js.p));
            write_output(profile_out, js.str() + "\n");
        }
        else if (sgen->parsed())
            scene_gen(g, so);
        else if (srender->parsed())
            scene_render(g, so);
        else if (tgen->parsed())
            trajectory_gen(g, to);
        else if (tpert->parsed())
            trajectory_perturb(g, to);
        else if (simc->parsed())
            simulate(g, sim);
        else if (rec->parsed())
            reconstruct(g, ro);
        else if (dgen->parsed())
            dataset_generate(g, dso);
        else if (dver->parsed())
            dataset_verify(dso);
        else if (met->parsed())
            metrics(mo);
        else if (bn->parsed())
            bench(g, bo);
        return 0;
    }
    catch (const std::exception &e)
    {
        log_record("error", "failure", {{"message", e.what()}});
        return 1;
    }
}
