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

#include "nfsar/forward_model.hpp"

#include <cmath>
#include <numbers>

#include "nfsar/error.hpp"
#include "nfsar/parallel.hpp"
#include "nfsar/random.hpp"

namespace nfsar
{

namespace
{
constexpr double kMinRange = 1e-9; // meters
}

std::vector<double> RawData::wavenumbers() const
{
    std::vector<double> k(freq_grid.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = 2.0 * std::numbers::pi * freq_grid[i] / kSpeedOfLight;
    return k;
}

void RawData::validate() const
{
    require(n_poses > 0 && n_tx > 0 && n_rx > 0, "raw data: empty layout");
    require(!freq_grid.empty(), "raw data: empty frequency grid");
    for (std::size_t i = 1; i < freq_grid.size(); ++i)
        require(freq_grid[i] > freq_grid[i - 1], "raw data: frequency grid must be strictly increasing");
    require(samples.size() == n_measurements() * n_freq(), "raw data: sample count does not match layout");
    for (const auto &s : samples)
        require(std::isfinite(s.real()) && std::isfinite(s.imag()), "raw data: non-finite sample");
}

void RawData::check_layout(const FreehandTrajectory &traj) const
{
    require(traj.n_poses() == n_poses && traj.n_tx() == n_tx && traj.n_rx() == n_rx,
            "raw data layout (" + std::to_string(n_poses) + "x" + std::to_string(n_tx) + "x" +
                std::to_string(n_rx) + ") does not match trajectory (" + std::to_string(traj.n_poses()) + "x" +
                std::to_string(traj.n_tx()) + "x" + std::to_string(traj.n_rx()) + ")");
}

RawData synthesize(std::span<const PointScatterer> scatterers, const FreehandTrajectory &traj,
                   const RadarConfig &radar)
{
    radar.validate();
    traj.validate();
    require(traj.tx_offsets == radar.tx_offsets && traj.rx_offsets == radar.rx_offsets,
            "synthesize: trajectory antenna offsets differ from the radar configuration");

    RawData raw;
    raw.n_poses = traj.n_poses();
    raw.n_tx = traj.n_tx();
    raw.n_rx = traj.n_rx();
    raw.freq_grid = radar.frequencies();
    const std::size_t nf = raw.n_freq();
    raw.samples.assign(raw.n_measurements() * nf, cdouble{});

    const auto k = raw.wavenumbers();
    const double k0 = k.front();
    const double dk = nf > 1 ? (k.back() - k.front()) / static_cast<double>(nf - 1) : 0.0;

    parallel_for(raw.n_measurements(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> re(nf), im(nf);
        for (std::size_t m = begin; m < end; ++m)
        {
            const std::size_t rx_i = m % raw.n_rx;
            const std::size_t tx_i = (m / raw.n_rx) % raw.n_tx;
            const std::size_t pose = m / (raw.n_rx * raw.n_tx);
            const Vec3 xt = traj.tx_position(pose, tx_i);
            const Vec3 xr = traj.rx_position(pose, rx_i);

            std::fill(re.begin(), re.end(), 0.0);
            std::fill(im.begin(), im.end(), 0.0);
            for (const auto &target : scatterers)
            {
                const double rt = distance(xt, target.position);
                const double rr = distance(xr, target.position);
                if (rt < kMinRange || rr < kMinRange)
                    fail(ErrorCode::singular_geometry, "synthesize: scatterer coincides with an antenna");
                const double path = rt + rr;
                const double amp = target.amplitude / (rt * rr);
                // exp(-j k_n D) = exp(-j k_0 D) * exp(-j dk D)^n on the uniform wavenumber grid.
                double tr = amp * std::cos(k0 * path), ti = -amp * std::sin(k0 * path);
                const double sr = std::cos(dk * path), si = -std::sin(dk * path);
                for (std::size_t n = 0; n < nf; ++n)
                {
                    re[n] += tr;
                    im[n] += ti;
                    const double nr = tr * sr - ti * si;
                    ti = tr * si + ti * sr;
                    tr = nr;
                }
            }
            cdouble *row = raw.samples.data() + m * nf;
            for (std::size_t n = 0; n < nf; ++n)
                row[n] = {re[n], im[n]};
        }
    });
    return raw;
}

double signal_power(const RawData &raw)
{
    if (raw.samples.empty())
        return 0.0;
    double p = 0.0;
    for (const auto &s : raw.samples)
        p += std::norm(s);
    return p / static_cast<double>(raw.samples.size());
}

RawData add_noise(const RawData &raw, double snr_db, std::uint64_t seed)
{
    require(!std::isnan(snr_db), "add_noise: SNR is NaN");
    if (std::isinf(snr_db) && snr_db > 0.0)
        return raw;
    raw.validate();
    const double p = signal_power(raw);
    require(p > 0.0, "add_noise: cannot scale noise to an all-zero signal");

    const double noise_power = p / std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(0.5 * noise_power);
    RawData out = raw;
    Rng rng(derive_seed(seed, SeedStream::noise));
    for (auto &s : out.samples)
    {
        const double nr = rng.normal(), ni = rng.normal();
        s += cdouble{sigma * nr, sigma * ni};
    }
    return out;
}

} // namespace nfsar
