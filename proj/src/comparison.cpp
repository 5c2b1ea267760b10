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

#include "nfsar/comparison.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "nfsar/empm.hpp"
#include "nfsar/error.hpp"
#include "nfsar/forward_model.hpp"
#include "nfsar/random.hpp"
#include "nfsar/reconstruction.hpp"

namespace nfsar
{

namespace
{

struct Timed
{
    SarImage image;
    std::vector<double> seconds;
};

Timed run_timed(const std::function<SarImage()> &task, std::size_t repetitions)
{
    Timed out;
    for (std::size_t r = 0; r < repetitions; ++r)
    {
        const auto start = std::chrono::steady_clock::now();
        out.image = task();
        out.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return out;
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

ComparisonResult compare_algorithms(const Profile &profile, const ComparisonSpec &spec)
{
    profile.validate();
    require(spec.n_scenes >= 1, "comparison: n_scenes must be >= 1");
    require(spec.repetitions >= 1, "comparison: repetitions must be >= 1");
    require(spec.z_span >= 0.0, "comparison: z_span must be >= 0");

    ComparisonResult result;
    result.machine = machine_descriptor();
    result.sigma = spec.sigma < 0.0 ? profile.radar.center_wavelength() / 8.0 : spec.sigma;

    const char *names[3] = {"BPA", "EMPM", "RMA"};
    std::vector<double> psnr_sum(3, 0.0), rmse_sum(3, 0.0);
    std::vector<std::vector<double>> times(3);

    for (std::size_t i = 0; i < spec.n_scenes; ++i)
    {
        const std::uint64_t seed = derive_seed(spec.base_seed, SeedStream::dataset_test, i);
        const Scene scene = random_scene(profile.scene, seed);
        const SarImage ideal = rasterize_ideal(scene, profile.grid);
        const auto scatterers = discretize_scene(scene, profile.grid);

        const JitterSpec jitter{profile.degradation.jitter_sigma_xy, spec.z_span, profile.degradation.jitter_smoothness};
        const auto truth = make_freehand_trajectory(profile.aperture, profile.radar, jitter, seed, profile.z0);
        const RawData raw = add_noise(synthesize(scatterers, truth, profile.radar), spec.snr_db, seed);
        const auto est = perturb_trajectory(truth, {Vec3{result.sigma, result.sigma, result.sigma}, seed});
        const VirtualGrid vgrid = virtual_grid_for(est);

        const std::function<SarImage()> tasks[3] = {
            [&] { return bpa(raw, est, profile.grid); },
            [&] { return rma(empm_compensate(raw, est, profile.z0, vgrid), profile.z0, profile.grid); },
            [&] { return rma(bin_to_grid(raw, est, vgrid), profile.z0, profile.grid); },
        };

        for (std::size_t a = 0; a < 3; ++a)
        {
            const Timed t = run_timed(tasks[a], spec.repetitions);
            times[a].insert(times[a].end(), t.seconds.begin(), t.seconds.end());
            const double e = rmse(t.image, ideal);
            const double p = psnr_from_rmse(e);
            rmse_sum[a] += e;
            psnr_sum[a] += p;
            const std::string label = std::string(names[a]) + "/scene_" + std::to_string(i);
            const std::string ref = "ideal/scene_" + std::to_string(i);
            result.records.push_back({"psnr_db", p, label, ref});
            result.records.push_back({"rmse", e, label, ref});
        }
    }

    const auto n = static_cast<double>(spec.n_scenes);
    for (std::size_t a = 0; a < 3; ++a)
    {
        AlgorithmSummary s;
        s.name = names[a];
        s.psnr_db = psnr_sum[a] / n;
        s.rmse = rmse_sum[a] / n;
        double sum = 0.0;
        for (double t : times[a])
            sum += t;
        s.time_s = sum / static_cast<double>(times[a].size());
        double var = 0.0;
        for (double t : times[a])
            var += (t - s.time_s) * (t - s.time_s);
        s.time_std_s = std::sqrt(var / static_cast<double>(times[a].size()));
        result.algorithms.push_back(s);
    }
    return result;
}

std::string comparison_csv(const ComparisonResult &result)
{
    std::string out = "Metrics";
    for (const auto &a : result.algorithms)
        out += "," + a.name;
    out += "\n";
    const std::pair<const char *, double AlgorithmSummary::*> rows[] = {
        {"PSNR (dB)", &AlgorithmSummary::psnr_db},
        {"RMSE", &AlgorithmSummary::rmse},
        {"Time (s)", &AlgorithmSummary::time_s},
    };
    for (const auto &[label, field] : rows)
    {
        out += label;
        for (const auto &a : result.algorithms)
            out += "," + format_number(a.*field);
        out += "\n";
    }
    return out;
}

std::string comparison_json_lines(const ComparisonResult &result)
{
    std::string out;
    for (const auto &r : result.records)
        out += to_json_line(r) + "\n";
    for (const auto &a : result.algorithms)
    {
        nlohmann::ordered_json j;
        j["algorithm"] = a.name;
        j["psnr_db"] = a.psnr_db;
        j["rmse"] = a.rmse;
        j["time_s"] = a.time_s;
        j["time_std_s"] = a.time_std_s;
        j["sigma"] = result.sigma;
        j["machine"] = result.machine;
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace nfsar
