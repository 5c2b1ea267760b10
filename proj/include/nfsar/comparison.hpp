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
#include <string>
#include <vector>

#include "nfsar/metrics.hpp"
#include "nfsar/profile.hpp"

namespace nfsar
{

// Fixed-degradation comparison of the three reconstruction paths on the same measurements.
struct ComparisonSpec
{
    std::size_t n_scenes = 4;
    double sigma = -1.0;     // position-estimate error std per axis; < 0 selects lambda_center / 8
    double snr_db = 25.0;
    double z_span = 0.01;
    std::size_t repetitions = 1; // timed runs per algorithm and scene
    std::uint64_t base_seed = 0;
};

struct AlgorithmSummary
{
    std::string name;      // "BPA", "EMPM", "RMA"
    double psnr_db = 0.0;  // mean over scenes
    double rmse = 0.0;     // mean over scenes
    double time_s = 0.0;   // mean wall time per image
    double time_std_s = 0.0;
};

struct ComparisonResult
{
    std::vector<AlgorithmSummary> algorithms;
    std::vector<MetricRecord> records; // per scene and algorithm
    std::string machine;
    double sigma = 0.0;
};

// BPA uses the estimated trajectory directly. EMPM is compensate + RMA. RMA bins the raw
// multistatic samples onto the same virtual grid without phase compensation.
ComparisonResult compare_algorithms(const Profile &profile, const ComparisonSpec &spec);

// Rows "PSNR (dB)", "RMSE", "Time (s)"; one column per algorithm.
std::string comparison_csv(const ComparisonResult &result);
// One JSON object per line, per-image metrics followed by the aggregate rows.
std::string comparison_json_lines(const ComparisonResult &result);

} // namespace nfsar
