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

#include "nfsar/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "nfsar/error.hpp"
#include "nfsar/parallel.hpp"

namespace nfsar
{

namespace
{

void check_same_shape(const SarImage &a, const SarImage &b)
{
    require(a.grid.nx == b.grid.nx && a.grid.ny == b.grid.ny,
            "image shapes differ: " + std::to_string(a.grid.nx) + "x" + std::to_string(a.grid.ny) + " vs " +
                std::to_string(b.grid.nx) + "x" + std::to_string(b.grid.ny));
    require(a.pixels.size() == a.grid.size() && b.pixels.size() == b.grid.size(), "image pixel buffer size mismatch");
}

} // namespace

double rmse(std::span<const double> a, std::span<const double> b)
{
    require(a.size() == b.size(), "rmse: size mismatch");
    require(!a.empty(), "rmse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

double rmse(const SarImage &a, const SarImage &b)
{
    check_same_shape(a, b);
    return rmse(std::span<const double>(a.pixels), std::span<const double>(b.pixels));
}

double psnr_from_rmse(double rmse_value)
{
    require(rmse_value >= 0.0, "psnr: negative rmse");
    if (rmse_value == 0.0)
        return kPsnrCapDb;
    return std::min(kPsnrCapDb, 20.0 * std::log10(1.0 / rmse_value));
}

double psnr(std::span<const double> a, std::span<const double> b)
{
    return psnr_from_rmse(rmse(a, b));
}

double psnr(const SarImage &a, const SarImage &b)
{
    return psnr_from_rmse(rmse(a, b));
}

double ncc(std::span<const double> a, std::span<const double> b)
{
    require(a.size() == b.size() && !a.empty(), "ncc: size mismatch");
    const auto constant = [](std::span<const double> v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *lo == *hi;
    };
    if (constant(a) || constant(b))
        return 0.0;
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double ncc(const SarImage &a, const SarImage &b)
{
    check_same_shape(a, b);
    return ncc(std::span<const double>(a.pixels), std::span<const double>(b.pixels));
}

PixelIndex argmax(const SarImage &img)
{
    require(!img.pixels.empty(), "argmax: empty image");
    const auto it = std::max_element(img.pixels.begin(), img.pixels.end());
    const auto idx = static_cast<std::size_t>(it - img.pixels.begin());
    return {idx % img.grid.nx, idx / img.grid.nx};
}

std::string machine_descriptor()
{
    std::string cpu = "unknown-cpu";
    std::ifstream info("/proc/cpuinfo");
    for (std::string line; std::getline(info, line);)
    {
        if (line.rfind("model name", 0) == 0)
        {
            const auto colon = line.find(':');
            if (colon != std::string::npos)
                cpu = line.substr(line.find_first_not_of(' ', colon + 1));
            break;
        }
    }
    return cpu + "; logical_cores=" + std::to_string(std::thread::hardware_concurrency()) +
           "; threads=" + std::to_string(thread_count());
}

BenchStats bench(const std::function<void()> &task, std::size_t repetitions)
{
    require(repetitions >= 1, "bench: repetitions must be >= 1");
    task(); // warm-up, excluded

    std::vector<double> t(repetitions);
    for (auto &s : t)
    {
        const auto start = std::chrono::steady_clock::now();
        task();
        s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    BenchStats stats;
    stats.repetitions = repetitions;
    stats.machine = machine_descriptor();
    double sum = 0.0;
    for (double s : t)
        sum += s;
    stats.mean_s = sum / static_cast<double>(repetitions);
    double var = 0.0;
    for (double s : t)
        var += (s - stats.mean_s) * (s - stats.mean_s);
    stats.std_s = std::sqrt(var / static_cast<double>(repetitions));
    stats.min_s = *std::min_element(t.begin(), t.end());
    return stats;
}

std::string to_json_line(const MetricRecord &record)
{
    nlohmann::ordered_json j;
    j["metric"] = record.metric;
    j["value"] = record.value;
    j["image_a"] = record.image_a;
    j["image_b"] = record.image_b;
    return j.dump();
}

} // namespace nfsar
