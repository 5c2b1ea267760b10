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
#include <string>

#include "nfsar/geometry.hpp"
#include "nfsar/scene.hpp"

namespace nfsar
{

// Per-sample degradation draws used by dataset generation.
struct DegradationRanges
{
    double sigma_min = 0.0;     // position-estimate error std, meters (same on all axes)
    double sigma_max = 0.0;     // lambda_center / 4 by default
    double snr_min_db = 15.0;
    double snr_max_db = 30.0;
    double z_span_min = 0.0;
    double z_span_max = 0.03;
    double jitter_sigma_xy = 0.0; // in-plane hand jitter of the true trajectory
    std::size_t jitter_smoothness = 8;

    void validate() const;
};

// A complete simulation setup: geometry, image grid, scene statistics and dataset sizes.
struct Profile
{
    std::string name;
    RadarConfig radar;
    ApertureSpec aperture;
    double z0 = kDefaultStandoff;
    GridSpec grid;
    SceneGenSpec scene;
    DegradationRanges degradation;
    std::size_t n_train = 0;
    std::size_t n_test = 0;

    void validate() const;
};

// 32 x 32 MIMO poses over 6.4 cm, 64 x 64 images, 256/64 samples.
Profile desk_profile();
// 64 x 64 MIMO poses over 12.8 cm, 128 x 128 images, 4096/1024 samples.
Profile paper_profile();
Profile profile_by_name(const std::string &name);

std::string profile_to_json(const Profile &profile);
Profile profile_from_json(const std::string &text);

} // namespace nfsar
