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

#include "test_support.hpp"

#include <cmath>

#include "nfsar/empm.hpp"
#include "nfsar/forward_model.hpp"
#include "nfsar/parallel.hpp"
#include "nfsar/random.hpp"

using namespace nfsar;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

RawData scene_data(const FreehandTrajectory &t, const RadarConfig &radar, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<PointScatterer> pts;
    for (int i = 0; i < 4; ++i)
        pts.push_back({{rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05), 0.3}, rng.uniform(0.2, 1.0)});
    return synthesize(pts, t, radar);
}

} // namespace

TEST_CASE("beta - closed forms", "[empm]")
{
    CHECK(beta(0.0, 0.0, 0.0, 0.3) == 0.0);
    CHECK(beta(0.0, 0.0, 0.0, 17.0) == 0.0);
    CHECK(beta(0.0, 0.0, 0.0125, 0.3) == 0.025);
    // 2 (0.01) + 0.02^2 / (4 * 0.3) = 0.02 + 0.0004 / 1.2
    CHECK_THAT(beta(0.02, 0.0, 0.01, 0.3), WithinAbs(0.0203333333333333333, 1e-12));
    CHECK_THAT(beta(0.0, 0.02, 0.0, 0.3), WithinAbs(0.0004 / 1.2, 1e-15));
    REQUIRE_THROWS_CODE(beta(0.0, 0.0, 0.0, 0.0), ErrorCode::invalid_argument);
    REQUIRE_THROWS_CODE(beta(0.0, 0.0, 0.0, -0.3), ErrorCode::invalid_argument);
}

TEST_CASE("virtual_grid_for - monostatic raster is the raster", "[empm]")
{
    const ApertureSpec ap{0.128, 0.128, 64, 64, 0.0};
    const auto t = make_raster_trajectory(ap, RadarConfig::monostatic());
    const auto g = virtual_grid_for(t);
    CHECK(g.nx == 64);
    CHECK(g.ny == 64);
    CHECK(g.spacing_x == ap.spacing_x());
    CHECK(g.origin_x == -0.064);
    for (std::size_t i = 0; i < t.n_poses(); ++i)
        REQUIRE(g.nearest(t.poses[i].x, t.poses[i].y) == i);
    CHECK_FALSE(g.nearest(-0.07, 0.0).has_value());
}

TEST_CASE("virtual_grid_for - MIMO midpoints all land on the grid", "[empm]")
{
    const auto t = make_freehand_trajectory({0.064, 0.064, 32, 32, 0.0}, RadarConfig::mimo_default(), {5e-4, 0.02, 8}, 1);
    const auto g = virtual_grid_for(t);
    CHECK(g.nx > 32);
    CHECK(g.ny > 32);
    const auto raw = synthesize({}, t, RadarConfig::mimo_default());
    CHECK(bin_to_grid(raw, t, g).dropped == 0);

    auto no_aperture = t;
    no_aperture.aperture.reset();
    REQUIRE_THROWS_CODE(virtual_grid_for(no_aperture), ErrorCode::invalid_state);
}

TEST_CASE("empm_compensate - identity on a planar monostatic raster", "[empm]")
{
    const auto radar = RadarConfig::monostatic();
    const auto t = make_raster_trajectory({0.128, 0.128, 64, 64, 0.0}, radar);
    const auto raw = scene_data(t, radar, 1);
    const auto v = empm_compensate(raw, t, 0.3);
    CHECK(v.dropped == 0);
    CHECK(v.samples == raw.samples);
    CHECK(std::all_of(v.occupancy.begin(), v.occupancy.end(), [](std::uint32_t o) { return o == 1; }));
    CHECK(v.freq_grid == raw.freq_grid);
}

TEST_CASE("compensate_phase - phase only and invertible", "[empm]")
{
    const auto radar = RadarConfig::mimo_default(77e9, 81e9, 32);
    const auto t = make_freehand_trajectory({0.03, 0.03, 8, 8, 0.0}, radar, {3e-4, 0.02, 4}, 2);
    const auto raw = scene_data(t, radar, 2);
    const double z0 = 0.3;
    const auto comp = compensate_phase(raw, t, z0);
    const auto elems = virtual_elements(t);
    const auto k = raw.wavenumbers();
    for (std::size_t m = 0; m < raw.n_measurements(); ++m)
    {
        const double b = beta(elems[m].dx, elems[m].dy, elems[m].dz, z0);
        for (std::size_t n = 0; n < raw.n_freq(); ++n)
        {
            const cdouble s = raw.at(m, n), c = comp.at(m, n);
            REQUIRE(std::abs(std::abs(c) - std::abs(s)) <= 1e-12 * std::abs(s));
            const cdouble back = c * std::polar(1.0, -k[n] * b);
            REQUIRE(std::abs(back - s) <= 1e-12 * std::abs(s));
        }
    }
}

TEST_CASE("empm_compensate - z offset cancels the two-way path difference", "[empm]")
{
    // Device 1 cm behind the reference plane: the round trip is 2 cm longer.
    const auto radar = RadarConfig::monostatic();
    auto on_plane = make_raster_trajectory({0.02, 0.02, 2, 2, 0.0}, radar);
    auto behind = on_plane;
    behind.kind = TrajectoryKind::freehand;
    for (auto &p : behind.poses)
        p.z -= 0.01;
    const std::vector<PointScatterer> target{{{0.0, 0.0, 0.3}, 1.0}};
    const auto ref = synthesize(target, on_plane, radar);
    const auto raw = synthesize(target, behind, radar);
    const auto comp = compensate_phase(raw, behind, 0.3);
    for (std::size_t m = 0; m < raw.n_measurements(); ++m)
        for (std::size_t n = 0; n < raw.n_freq(); ++n)
        {
            // Phases agree to the small broadside-range error of the projection.
            const double dphi = std::arg(comp.at(m, n) / ref.at(m, n));
            REQUIRE(std::abs(dphi) < 0.05);
        }
}

TEST_CASE("bin_to_grid - averaging, empty cells and dropping", "[empm]")
{
    const auto radar = RadarConfig::monostatic(77e9, 81e9, 4);
    auto t = make_raster_trajectory({0.03, 0.03, 4, 4, 0.0}, radar);
    const auto g = virtual_grid_for(t);
    t.kind = TrajectoryKind::freehand;
    t.poses[1] = t.poses[0];          // two samples in cell 0, cell 1 left empty
    t.poses[2].x = 0.5;                // far outside the grid
    RawData raw = synthesize({}, t, radar);
    for (std::size_t n = 0; n < 4; ++n)
    {
        raw.at(0, n) = {1.0, 2.0};
        raw.at(1, n) = {3.0, -2.0};
    }
    const auto v = bin_to_grid(raw, t, g);
    CHECK(v.dropped == 1);
    CHECK(v.occupancy[0] == 2);
    CHECK(v.occupancy[1] == 0);
    CHECK(v.occupancy[2] == 0);
    CHECK(v.at(0, 0) == cdouble{2.0, 0.0});
    CHECK(v.at(1, 0) == cdouble{});
}

TEST_CASE("empm_compensate - errors", "[empm]")
{
    const auto radar = RadarConfig::monostatic(77e9, 81e9, 4);
    const auto t = make_raster_trajectory({0.03, 0.03, 4, 4, 0.0}, radar);
    const auto raw = synthesize({}, t, radar);
    REQUIRE_THROWS_CODE(empm_compensate(raw, t, 0.0), ErrorCode::invalid_argument);
    const auto other = make_raster_trajectory({0.03, 0.03, 3, 4, 0.0}, radar);
    REQUIRE_THROWS_CODE(empm_compensate(raw, other, 0.3), ErrorCode::invalid_argument);
}

TEST_CASE("empm_compensate - thread count independence", "[empm]")
{
    const auto radar = RadarConfig::mimo_default(77e9, 81e9, 16);
    const auto t = make_freehand_trajectory({0.03, 0.03, 8, 8, 0.0}, radar, {3e-4, 0.02, 4}, 6);
    const auto raw = scene_data(t, radar, 6);
    set_thread_count(1);
    const auto a = empm_compensate(raw, t, 0.3);
    set_thread_count(3);
    const auto b = empm_compensate(raw, t, 0.3);
    set_thread_count(0);
    CHECK(a == b);
}
