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

#include "nfsar/profile.hpp"

#include <json.hpp>

#include "nfsar/error.hpp"

namespace nfsar
{

using ojson = nlohmann::ordered_json;

void DegradationRanges::validate() const
{
    require(sigma_min >= 0.0 && sigma_min <= sigma_max, "degradation: invalid sigma range");
    require(snr_min_db <= snr_max_db, "degradation: invalid SNR range");
    require(z_span_min >= 0.0 && z_span_min <= z_span_max, "degradation: invalid z-span range");
    require(jitter_sigma_xy >= 0.0, "degradation: jitter sigma must be >= 0");
    require(jitter_smoothness >= 1, "degradation: jitter smoothness must be >= 1");
}

void Profile::validate() const
{
    radar.validate();
    aperture.validate();
    grid.validate();
    scene.validate();
    degradation.validate();
    require(z0 > 0.0, "profile: Z0 must be positive");
    require(grid.plane_z == aperture.z + z0, "profile: image plane must sit at aperture z + Z0");
    require(scene.plane_z == grid.plane_z, "profile: scene plane must match the image plane");
}

namespace
{

Profile common_profile()
{
    Profile p;
    p.radar = RadarConfig::mimo_default();
    p.z0 = kDefaultStandoff;
    const double lambda = p.radar.center_wavelength();
    p.degradation.sigma_max = lambda / 4.0;
    p.degradation.jitter_sigma_xy = lambda / 8.0;
    p.scene.plane_z = p.z0;
    return p;
}

} // namespace

Profile desk_profile()
{
    Profile p = common_profile();
    p.name = "desk";
    p.aperture = ApertureSpec{0.064, 0.064, 32, 32, 0.0};
    p.grid = GridSpec{64, 64, 0.2, 0.2, p.z0};
    p.n_train = 256;
    p.n_test = 64;
    return p;
}

Profile paper_profile()
{
    Profile p = common_profile();
    p.name = "paper";
    p.aperture = ApertureSpec{0.128, 0.128, 64, 64, 0.0};
    p.grid = GridSpec{128, 128, 0.2, 0.2, p.z0};
    p.n_train = 4096;
    p.n_test = 1024;
    return p;
}

Profile profile_by_name(const std::string &name)
{
    if (name == "desk")
        return desk_profile();
    if (name == "paper")
        return paper_profile();
    fail(ErrorCode::invalid_argument, "unknown profile '" + name + "' (expected desk or paper)");
}

std::string profile_to_json(const Profile &p)
{
    ojson j;
    j["name"] = p.name;
    j["radar"] = ojson::parse(radar_to_json(p.radar));
    j["aperture"] = {{"width", p.aperture.width}, {"height", p.aperture.height}, {"nx", p.aperture.nx},
                     {"ny", p.aperture.ny}, {"z", p.aperture.z}};
    j["Z0"] = p.z0;
    j["grid"] = {{"nx", p.grid.nx}, {"ny", p.grid.ny}, {"width", p.grid.width}, {"height", p.grid.height},
                 {"plane_z", p.grid.plane_z}};
    const auto &s = p.scene;
    j["scene"] = {{"points", {s.points_min, s.points_max}},
                  {"shapes", {s.shapes_min, s.shapes_max}},
                  {"amplitude", {s.amplitude_min, s.amplitude_max}},
                  {"min_separation", s.min_separation},
                  {"fov", {s.fov_width, s.fov_height}},
                  {"shape_size", {s.shape_size_min, s.shape_size_max}},
                  {"plane_z", s.plane_z},
                  {"max_retries", s.max_retries}};
    const auto &d = p.degradation;
    j["degradation"] = {{"sigma", {d.sigma_min, d.sigma_max}},
                        {"snr_db", {d.snr_min_db, d.snr_max_db}},
                        {"z_span", {d.z_span_min, d.z_span_max}},
                        {"jitter_sigma_xy", d.jitter_sigma_xy},
                        {"jitter_smoothness", d.jitter_smoothness}};
    j["n_train"] = p.n_train;
    j["n_test"] = p.n_test;
    return j.dump(1);
}

Profile profile_from_json(const std::string &text)
{
    try
    {
        const auto j = ojson::parse(text);
        Profile p;
        p.name = j.at("name").get<std::string>();
        p.radar = radar_from_json(j.at("radar").dump());
        const auto &a = j.at("aperture");
        p.aperture = ApertureSpec{a.at("width").get<double>(), a.at("height").get<double>(),
                                  a.at("nx").get<std::size_t>(), a.at("ny").get<std::size_t>(), a.at("z").get<double>()};
        p.z0 = j.at("Z0").get<double>();
        const auto &g = j.at("grid");
        p.grid = GridSpec{g.at("nx").get<std::size_t>(), g.at("ny").get<std::size_t>(), g.at("width").get<double>(),
                          g.at("height").get<double>(), g.at("plane_z").get<double>()};
        const auto &s = j.at("scene");
        p.scene.points_min = s.at("points").at(0).get<std::size_t>();
        p.scene.points_max = s.at("points").at(1).get<std::size_t>();
        p.scene.shapes_min = s.at("shapes").at(0).get<std::size_t>();
        p.scene.shapes_max = s.at("shapes").at(1).get<std::size_t>();
        p.scene.amplitude_min = s.at("amplitude").at(0).get<double>();
        p.scene.amplitude_max = s.at("amplitude").at(1).get<double>();
        p.scene.min_separation = s.at("min_separation").get<double>();
        p.scene.fov_width = s.at("fov").at(0).get<double>();
        p.scene.fov_height = s.at("fov").at(1).get<double>();
        p.scene.shape_size_min = s.at("shape_size").at(0).get<double>();
        p.scene.shape_size_max = s.at("shape_size").at(1).get<double>();
        p.scene.plane_z = s.at("plane_z").get<double>();
        p.scene.max_retries = s.at("max_retries").get<std::size_t>();
        const auto &d = j.at("degradation");
        p.degradation.sigma_min = d.at("sigma").at(0).get<double>();
        p.degradation.sigma_max = d.at("sigma").at(1).get<double>();
        p.degradation.snr_min_db = d.at("snr_db").at(0).get<double>();
        p.degradation.snr_max_db = d.at("snr_db").at(1).get<double>();
        p.degradation.z_span_min = d.at("z_span").at(0).get<double>();
        p.degradation.z_span_max = d.at("z_span").at(1).get<double>();
        p.degradation.jitter_sigma_xy = d.at("jitter_sigma_xy").get<double>();
        p.degradation.jitter_smoothness = d.at("jitter_smoothness").get<std::size_t>();
        p.n_train = j.at("n_train").get<std::size_t>();
        p.n_test = j.at("n_test").get<std::size_t>();
        p.validate();
        return p;
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, std::string("profile json: ") + e.what());
    }
}

} // namespace nfsar
