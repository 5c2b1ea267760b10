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
#include <thread>

#include "nfsar/metrics.hpp"
#include "nfsar/random.hpp"

using namespace nfsar;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

SarImage random_image(std::uint64_t seed, std::size_t n = 16)
{
    Rng rng(seed);
    SarImage img = SarImage::zeros({n, n, 0.1, 0.1, 0.3});
    for (auto &v : img.pixels)
        v = rng.uniform();
    return img;
}

} // namespace

TEST_CASE("rmse and psnr - closed forms", "[metrics]")
{
    const std::vector<double> a(100, 0.0), b(100, 0.1);
    CHECK_THAT(rmse(a, b), WithinAbs(0.1, 1e-15));
    CHECK_THAT(psnr(a, b), WithinAbs(20.0, 1e-9));

    // Half the pixels off by 0.2: rmse = sqrt(0.5 * 0.04).
    std::vector<double> c(100, 0.0);
    for (std::size_t i = 0; i < 50; ++i)
        c[i] = 0.2;
    CHECK_THAT(rmse(a, c), WithinAbs(std::sqrt(0.02), 1e-15));
    CHECK_THAT(psnr(a, c), WithinAbs(-20.0 * std::log10(std::sqrt(0.02)), 1e-9));

    CHECK_THAT(psnr_from_rmse(1.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(psnr_from_rmse(1e-3), WithinAbs(60.0, 1e-9));
}

TEST_CASE("psnr - identical images hit the cap", "[metrics]")
{
    const auto img = random_image(1);
    CHECK(rmse(img, img) == 0.0);
    CHECK(psnr(img, img) == kPsnrCapDb);
    CHECK(psnr_from_rmse(1e-7) == kPsnrCapDb);
    CHECK(std::isfinite(psnr(img, img)));
    REQUIRE_THROWS_CODE(psnr_from_rmse(-1.0), ErrorCode::invalid_argument);
}

TEST_CASE("metrics - symmetry and agreement with a direct sum", "[metrics]")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const auto a = random_image(2 * seed), b = random_image(2 * seed + 1);
        double sq = 0.0;
        for (std::size_t i = 0; i < a.pixels.size(); ++i)
            sq += (a.pixels[i] - b.pixels[i]) * (a.pixels[i] - b.pixels[i]);
        const double want = std::sqrt(sq / static_cast<double>(a.pixels.size()));
        CHECK_THAT(rmse(a, b), WithinAbs(want, 1e-12));
        CHECK(rmse(a, b) == rmse(b, a));
        CHECK(psnr(a, b) == psnr(b, a));
        CHECK_THAT(ncc(a, b), WithinAbs(ncc(b, a), 1e-15));
    }
}

TEST_CASE("ncc - affine invariance and degenerate input", "[metrics]")
{
    const auto a = random_image(7);
    auto b = a;
    for (auto &v : b.pixels)
        v = 0.25 * v + 0.5;
    CHECK_THAT(ncc(a, b), WithinAbs(1.0, 1e-12));
    for (auto &v : b.pixels)
        v = 1.0 - v;
    CHECK_THAT(ncc(a, b), WithinAbs(-1.0, 1e-12));
    const std::vector<double> flat(a.pixels.size(), 0.3);
    CHECK(ncc(a.pixels, flat) == 0.0);
}

TEST_CASE("metrics - size mismatch", "[metrics]")
{
    const auto a = random_image(1, 16), b = random_image(2, 8);
    REQUIRE_THROWS_CODE(rmse(a, b), ErrorCode::invalid_argument);
    REQUIRE_THROWS_CODE(psnr(a, b), ErrorCode::invalid_argument);
    REQUIRE_THROWS_CODE(ncc(a, b), ErrorCode::invalid_argument);
    REQUIRE_THROWS_CODE(rmse(std::vector<double>{}, std::vector<double>{}), ErrorCode::invalid_argument);
}

TEST_CASE("argmax - first maximum in row-major order", "[metrics]")
{
    SarImage img = SarImage::zeros({8, 8, 0.1, 0.1, 0.3});
    img.at(5, 2) = 1.0;
    img.at(3, 6) = 1.0;
    CHECK(argmax(img) == PixelIndex{5, 2});
    CHECK(argmax(SarImage::zeros({8, 8, 0.1, 0.1, 0.3})) == PixelIndex{0, 0});
}

TEST_CASE("bench - statistics", "[metrics]")
{
    int calls = 0;
    const auto one = bench([&] { ++calls; }, 1);
    CHECK(calls == 2); // warm-up plus one timed run
    CHECK(one.repetitions == 1);
    CHECK(one.std_s == 0.0);
    CHECK(one.mean_s == one.min_s);

    const auto five = bench([] { std::this_thread::sleep_for(std::chrono::milliseconds(2)); }, 5);
    CHECK(five.repetitions == 5);
    CHECK(five.min_s <= five.mean_s);
    CHECK(five.min_s >= 0.002);
    CHECK(five.std_s >= 0.0);
    CHECK_FALSE(five.machine.empty());
    REQUIRE_THROWS_CODE(bench([] {}, 0), ErrorCode::invalid_argument);
}

TEST_CASE("to_json_line - one object per line", "[metrics]")
{
    const auto line = to_json_line({"psnr_db", 23.5, "a.nfsi", "b \"x\".nfsi"});
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line == R"({"metric":"psnr_db","value":23.5,"image_a":"a.nfsi","image_b":"b \"x\".nfsi"})");
}
