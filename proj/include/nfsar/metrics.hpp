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
#include <functional>
#include <span>
#include <string>

#include "nfsar/scene.hpp"

namespace nfsar
{

// Peak value 1.0 (normalized images). Identical images report the cap instead of +inf.
inline constexpr double kPsnrCapDb = 100.0;

double rmse(std::span<const double> a, std::span<const double> b);
double rmse(const SarImage &a, const SarImage &b);

// 20 log10(1 / rmse), capped at kPsnrCapDb (the cap takes over below rmse = 1e-5).
double psnr_from_rmse(double rmse_value);
double psnr(std::span<const double> a, std::span<const double> b);
double psnr(const SarImage &a, const SarImage &b);

// Zero-mean normalized cross-correlation; 0 when either input is constant.
double ncc(std::span<const double> a, std::span<const double> b);
double ncc(const SarImage &a, const SarImage &b);

struct PixelIndex
{
    std::size_t ix = 0, iy = 0;
    bool operator==(const PixelIndex &) const = default;
};

// First maximum in row-major order.
PixelIndex argmax(const SarImage &img);

struct BenchStats
{
    double mean_s = 0.0;
    double std_s = 0.0; // population standard deviation
    double min_s = 0.0;
    std::size_t repetitions = 0;
    std::string machine;
};

// Wall-clock statistics of `task` over `repetitions` timed runs, after one untimed warm-up run.
BenchStats bench(const std::function<void()> &task, std::size_t repetitions);

// Short host description (CPU model, logical cores, worker budget).
std::string machine_descriptor();

struct MetricRecord
{
    std::string metric;
    double value = 0.0;
    std::string image_a;
    std::string image_b;
};

// One line of JSON: {"metric":..,"value":..,"image_a":..,"image_b":..}
std::string to_json_line(const MetricRecord &record);

} // namespace nfsar
