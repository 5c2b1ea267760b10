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

#include "nfsar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "nfsar/error.hpp"
#include "nfsar/random.hpp"

namespace nfsar
{

using ojson = nlohmann::ordered_json;

void RadarConfig::validate() const
{
    require(f_start > 0.0, "radar: f_start must be positive");
    require(f_stop > f_start, "radar: f_stop must exceed f_start");
    require(n_freq >= 1, "radar: n_freq must be >= 1");
    require(!tx_offsets.empty(), "radar: at least one Tx offset required");
    require(!rx_offsets.empty(), "radar: at least one Rx offset required");
}

std::vector<double> RadarConfig::frequencies() const
{
    std::vector<double> f(n_freq, f_start);
    if (n_freq > 1)
    {
        const double df = (f_stop - f_start) / static_cast<double>(n_freq - 1);
        for (std::size_t i = 0; i < n_freq; ++i)
            f[i] = f_start + df * static_cast<double>(i);
    }
    return f;
}

std::vector<double> RadarConfig::wavenumbers() const
{
    auto k = frequencies();
    for (auto &v : k)
        v = 2.0 * std::numbers::pi * v / kSpeedOfLight;
    return k;
}

RadarConfig RadarConfig::monostatic(double f_start, double f_stop, std::size_t n_freq)
{
    RadarConfig r;
    r.f_start = f_start;
    r.f_stop = f_stop;
    r.n_freq = n_freq;
    r.tx_offsets = {Vec3{}};
    r.rx_offsets = {Vec3{}};
    return r;
}

RadarConfig RadarConfig::mimo_default(double f_start, double f_stop, std::size_t n_freq)
{
    RadarConfig r = monostatic(f_start, f_stop, n_freq);
    const double pitch = 0.5 * r.center_wavelength();
    r.tx_offsets = {Vec3{0.0, -2.0 * pitch, 0.0}, Vec3{0.0, 2.0 * pitch, 0.0}};
    r.rx_offsets = {Vec3{0.0, -1.5 * pitch, 0.0}, Vec3{0.0, -0.5 * pitch, 0.0},
                    Vec3{0.0, 0.5 * pitch, 0.0}, Vec3{0.0, 1.5 * pitch, 0.0}};
    return r;
}

void ApertureSpec::validate() const
{
    require(width > 0.0 && height > 0.0, "aperture: width and height must be positive");
    require(nx >= 2 && ny >= 2, "aperture: nx and ny must be >= 2");
}

const char *to_string(TrajectoryKind kind) noexcept
{
    return kind == TrajectoryKind::freehand ? "freehand" : "planar-raster";
}

TrajectoryKind trajectory_kind_from_string(const std::string &s)
{
    if (s == "freehand")
        return TrajectoryKind::freehand;
    if (s == "planar-raster")
        return TrajectoryKind::planar_raster;
    fail(ErrorCode::invalid_argument, "unknown trajectory kind '" + s + "'");
}

double FreehandTrajectory::target_plane_z() const
{
    if (!z0)
        fail(ErrorCode::invalid_state, "trajectory has no reference standoff Z0");
    return z_ref + *z0;
}

void FreehandTrajectory::validate() const
{
    require(!poses.empty(), "trajectory: no poses");
    require(!tx_offsets.empty() && !rx_offsets.empty(), "trajectory: missing Tx/Rx offsets");
    if (kind == TrajectoryKind::planar_raster)
    {
        for (const auto &p : poses)
            require(p.z == poses.front().z, "trajectory: planar raster with non-coplanar poses");
    }
    if (z0)
    {
        require(*z0 > 0.0, "trajectory: Z0 must be positive");
        double max_z = -INFINITY;
        for (const auto &p : poses)
        {
            for (const auto &o : tx_offsets)
                max_z = std::max(max_z, p.z + o.z);
            for (const auto &o : rx_offsets)
                max_z = std::max(max_z, p.z + o.z);
        }
        require(z_ref + *z0 > max_z, "trajectory: target plane must lie beyond every antenna");
    }
}

FreehandTrajectory make_raster_trajectory(const ApertureSpec &aperture, const RadarConfig &radar,
                                          std::optional<double> z0)
{
    aperture.validate();
    radar.validate();

    FreehandTrajectory t;
    t.kind = TrajectoryKind::planar_raster;
    t.z_ref = aperture.z;
    t.z0 = z0;
    t.tx_offsets = radar.tx_offsets;
    t.rx_offsets = radar.rx_offsets;
    t.aperture = aperture;
    t.poses.reserve(aperture.nx * aperture.ny);

    const double dx = aperture.spacing_x(), dy = aperture.spacing_y();
    const double x0 = -0.5 * aperture.width, y0 = -0.5 * aperture.height;
    for (std::size_t iy = 0; iy < aperture.ny; ++iy)
        for (std::size_t ix = 0; ix < aperture.nx; ++ix)
            t.poses.push_back({x0 + dx * static_cast<double>(ix), y0 + dy * static_cast<double>(iy), aperture.z});

    t.validate();
    return t;
}

namespace
{

// White Gaussian noise smoothed by a length-`window` moving average, rescaled to unit marginal std.
std::vector<double> smoothed_noise(Rng &rng, std::size_t n, std::size_t window)
{
    window = std::max<std::size_t>(window, 1);
    std::vector<double> white(n + window - 1);
    for (auto &w : white)
        w = rng.normal();

    std::vector<double> out(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < window; ++i)
        acc += white[i];
    const double scale = 1.0 / std::sqrt(static_cast<double>(window));
    for (std::size_t i = 0; i < n; ++i)
    {
        out[i] = acc * scale;
        if (i + window < white.size())
            acc += white[i + window] - white[i];
    }
    return out;
}

} // namespace

FreehandTrajectory make_freehand_trajectory(const ApertureSpec &base, const RadarConfig &radar,
                                            const JitterSpec &jitter, std::uint64_t seed,
                                            std::optional<double> z0)
{
    require(jitter.sigma_xy >= 0.0, "jitter: sigma_xy must be >= 0");
    require(jitter.z_span >= 0.0, "jitter: z_span must be >= 0");

    FreehandTrajectory t = make_raster_trajectory(base, radar, z0);
    t.kind = TrajectoryKind::freehand;
    const std::size_t n = t.poses.size();

    const std::uint64_t stream = derive_seed(seed, SeedStream::trajectory_jitter);
    Rng rng_x(derive_seed(stream, SeedStream::trajectory_jitter, 0));
    Rng rng_y(derive_seed(stream, SeedStream::trajectory_jitter, 1));
    Rng rng_z(derive_seed(stream, SeedStream::trajectory_jitter, 2));

    const auto jx = smoothed_noise(rng_x, n, jitter.smoothness);
    const auto jy = smoothed_noise(rng_y, n, jitter.smoothness);
    // The depth excursion drifts slowly: at least one raster row per correlation length.
    auto jz = smoothed_noise(rng_z, n, std::max(jitter.smoothness, base.nx));

    if (jitter.sigma_xy > 0.0)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            t.poses[i].x += jitter.sigma_xy * jx[i];
            t.poses[i].y += jitter.sigma_xy * jy[i];
        }
    }
    if (jitter.z_span > 0.0)
    {
        double peak = 0.0;
        for (double v : jz)
            peak = std::max(peak, std::abs(v));
        if (peak > 0.0)
        {
            const double scale = 0.5 * jitter.z_span / peak;
            for (std::size_t i = 0; i < n; ++i)
                t.poses[i].z += std::clamp(jz[i] * scale, -0.5 * jitter.z_span, 0.5 * jitter.z_span);
        }
    }

    t.validate();
    return t;
}

FreehandTrajectory perturb_trajectory(const FreehandTrajectory &traj, const PerturbationSpec &spec)
{
    require(spec.sigma.x >= 0.0 && spec.sigma.y >= 0.0 && spec.sigma.z >= 0.0,
            "perturbation: sigma components must be >= 0");
    traj.validate();

    FreehandTrajectory out = traj;
    Rng rng(derive_seed(spec.seed, SeedStream::perturbation));
    for (auto &p : out.poses)
    {
        const double ex = rng.normal(), ey = rng.normal(), ez = rng.normal();
        // Zero-sigma axes are left untouched so the identity holds bit-for-bit (including -0.0).
        if (spec.sigma.x > 0.0)
            p.x += spec.sigma.x * ex;
        if (spec.sigma.y > 0.0)
            p.y += spec.sigma.y * ey;
        if (spec.sigma.z > 0.0)
            p.z += spec.sigma.z * ez;
    }
    return out;
}

std::vector<VirtualElement> virtual_elements(const FreehandTrajectory &traj)
{
    if (!traj.z0)
        fail(ErrorCode::invalid_state, "virtual_elements: trajectory has no reference standoff Z0");

    std::vector<VirtualElement> out;
    out.reserve(traj.n_measurements());
    for (std::size_t p = 0; p < traj.n_poses(); ++p)
        for (std::size_t t = 0; t < traj.n_tx(); ++t)
            for (std::size_t r = 0; r < traj.n_rx(); ++r)
            {
                const Vec3 tx = traj.tx_position(p, t);
                const Vec3 rx = traj.rx_position(p, r);
                VirtualElement e;
                e.position = (tx + rx) * 0.5;
                e.dx = tx.x - rx.x;
                e.dy = tx.y - rx.y;
                e.dz = traj.z_ref - e.position.z;
                out.push_back(e);
            }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace
{

ojson vec_list(const std::vector<Vec3> &v)
{
    ojson a = ojson::array();
    for (const auto &p : v)
        a.push_back({p.x, p.y, p.z});
    return a;
}

std::vector<Vec3> parse_vec_list(const ojson &a, const char *what)
{
    require(a.is_array(), std::string(what) + ": expected an array");
    std::vector<Vec3> out;
    out.reserve(a.size());
    for (const auto &e : a)
    {
        require(e.is_array() && e.size() == 3, std::string(what) + ": expected [x, y, z] triples");
        out.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
    }
    return out;
}

template <typename F>
auto parse_or_throw(const std::string &what, F &&f)
{
    try
    {
        return f();
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, what + ": " + e.what());
    }
}

} // namespace

std::string trajectory_to_json(const FreehandTrajectory &traj)
{
    ojson j;
    j["kind"] = to_string(traj.kind);
    j["z_ref"] = traj.z_ref;
    j["Z0"] = traj.z0 ? ojson(*traj.z0) : ojson(nullptr);
    j["poses"] = vec_list(traj.poses);
    j["tx_offsets"] = vec_list(traj.tx_offsets);
    j["rx_offsets"] = vec_list(traj.rx_offsets);
    if (traj.aperture)
    {
        const auto &a = *traj.aperture;
        j["aperture"] = {{"width", a.width}, {"height", a.height}, {"nx", a.nx}, {"ny", a.ny}, {"z", a.z}};
    }
    return j.dump(1) + "\n";
}

FreehandTrajectory trajectory_from_json(const std::string &text)
{
    return parse_or_throw("trajectory json", [&] {
        const auto j = ojson::parse(text);
        FreehandTrajectory t;
        t.kind = trajectory_kind_from_string(j.at("kind").get<std::string>());
        t.z_ref = j.at("z_ref").get<double>();
        if (j.contains("Z0") && !j["Z0"].is_null())
            t.z0 = j["Z0"].get<double>();
        t.poses = parse_vec_list(j.at("poses"), "poses");
        t.tx_offsets = parse_vec_list(j.at("tx_offsets"), "tx_offsets");
        t.rx_offsets = parse_vec_list(j.at("rx_offsets"), "rx_offsets");
        if (j.contains("aperture"))
        {
            const auto &a = j["aperture"];
            t.aperture = ApertureSpec{a.at("width").get<double>(), a.at("height").get<double>(),
                                      a.at("nx").get<std::size_t>(), a.at("ny").get<std::size_t>(),
                                      a.at("z").get<double>()};
        }
        t.validate();
        return t;
    });
}

std::string radar_to_json(const RadarConfig &radar)
{
    ojson j;
    j["f_start"] = radar.f_start;
    j["f_stop"] = radar.f_stop;
    j["n_freq"] = radar.n_freq;
    j["tx_offsets"] = vec_list(radar.tx_offsets);
    j["rx_offsets"] = vec_list(radar.rx_offsets);
    return j.dump(1) + "\n";
}

RadarConfig radar_from_json(const std::string &text)
{
    return parse_or_throw("radar json", [&] {
        const auto j = ojson::parse(text);
        RadarConfig r;
        r.f_start = j.at("f_start").get<double>();
        r.f_stop = j.at("f_stop").get<double>();
        r.n_freq = j.at("n_freq").get<std::size_t>();
        r.tx_offsets = parse_vec_list(j.at("tx_offsets"), "tx_offsets");
        r.rx_offsets = parse_vec_list(j.at("rx_offsets"), "rx_offsets");
        r.validate();
        return r;
    });
}

} // namespace nfsar
