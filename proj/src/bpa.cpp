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

#include <cmath>

#include "nfsar/error.hpp"
#include "nfsar/parallel.hpp"
#include "nfsar/reconstruction.hpp"

namespace nfsar
{

namespace
{

constexpr double kMinRange = 1e-9;

bool is_uniform(const std::vector<double> &k)
{
    if (k.size() < 3)
        return true;
    const double dk = (k.back() - k.front()) / static_cast<double>(k.size() - 1);
    for (std::size_t n = 1; n < k.size(); ++n)
        if (std::abs((k[n] - k[n - 1]) - dk) > 1e-9 * std::abs(dk))
            return false;
    return true;
}

} // namespace

std::vector<double> bpa_magnitude(const RawData &raw, const FreehandTrajectory &traj_est, const GridSpec &grid)
{
    grid.validate();
    raw.check_layout(traj_est);
    require(raw.samples.size() == raw.n_measurements() * raw.n_freq(), "bpa: sample count does not match layout");

    const std::size_t nf = raw.n_freq();
    const std::size_t nx = grid.nx;
    const std::size_t n_meas = raw.n_measurements();
    const auto k = raw.wavenumbers();
    const bool uniform = is_uniform(k);
    const double k0 = k.front();
    const double dk = nf > 1 ? (k.back() - k.front()) / static_cast<double>(nf - 1) : 0.0;

    // Split the data into real/imag planes once; the Horner loop below runs across pixels.
    std::vector<double> s_re(raw.samples.size()), s_im(raw.samples.size());
    for (std::size_t i = 0; i < raw.samples.size(); ++i)
    {
        s_re[i] = raw.samples[i].real();
        s_im[i] = raw.samples[i].imag();
    }

    std::vector<Vec3> tx(n_meas), rx(n_meas);
    for (std::size_t m = 0; m < n_meas; ++m)
    {
        const std::size_t r = m % raw.n_rx, t = (m / raw.n_rx) % raw.n_tx, p = m / (raw.n_rx * raw.n_tx);
        tx[m] = traj_est.tx_position(p, t);
        rx[m] = traj_est.rx_position(p, r);
    }

    std::vector<double> out(grid.size());
    parallel_for(grid.ny, [&](std::size_t row_begin, std::size_t row_end) {
        std::vector<double> path(nx), zr(nx), zi(nx), ar(nx), ai(nx), img_r(nx), img_i(nx);
        for (std::size_t iy = row_begin; iy < row_end; ++iy)
        {
            std::fill(img_r.begin(), img_r.end(), 0.0);
            std::fill(img_i.begin(), img_i.end(), 0.0);
            const double y = grid.y_at(iy);

            for (std::size_t m = 0; m < n_meas; ++m)
            {
                for (std::size_t ix = 0; ix < nx; ++ix)
                {
                    const Vec3 px{grid.x_at(ix), y, grid.plane_z};
                    const double rt = distance(tx[m], px), rr = distance(rx[m], px);
                    if (rt < kMinRange || rr < kMinRange)
                        fail(ErrorCode::singular_geometry, "bpa: image pixel coincides with an antenna");
                    path[ix] = rt + rr;
                }
                const double *sr = s_re.data() + m * nf;
                const double *si = s_im.data() + m * nf;

                if (uniform)
                {
                    // sum_n s_n exp(j k_n D) = exp(j k_0 D) * sum_n s_n z^n, z = exp(j dk D), by Horner.
                    for (std::size_t ix = 0; ix < nx; ++ix)
                    {
                        zr[ix] = std::cos(dk * path[ix]);
                        zi[ix] = std::sin(dk * path[ix]);
                        ar[ix] = sr[nf - 1];
                        ai[ix] = si[nf - 1];
                    }
                    for (std::size_t n = nf - 1; n-- > 0;)
                    {
                        const double cr = sr[n], ci = si[n];
                        for (std::size_t ix = 0; ix < nx; ++ix)
                        {
                            const double nr = ar[ix] * zr[ix] - ai[ix] * zi[ix] + cr;
                            ai[ix] = ar[ix] * zi[ix] + ai[ix] * zr[ix] + ci;
                            ar[ix] = nr;
                        }
                    }
                    for (std::size_t ix = 0; ix < nx; ++ix)
                    {
                        const double er = std::cos(k0 * path[ix]), ei = std::sin(k0 * path[ix]);
                        img_r[ix] += ar[ix] * er - ai[ix] * ei;
                        img_i[ix] += ar[ix] * ei + ai[ix] * er;
                    }
                }
                else
                {
                    for (std::size_t ix = 0; ix < nx; ++ix)
                        for (std::size_t n = 0; n < nf; ++n)
                        {
                            const double er = std::cos(k[n] * path[ix]), ei = std::sin(k[n] * path[ix]);
                            img_r[ix] += sr[n] * er - si[n] * ei;
                            img_i[ix] += sr[n] * ei + si[n] * er;
                        }
                }
            }
            for (std::size_t ix = 0; ix < nx; ++ix)
                out[iy * nx + ix] = std::hypot(img_r[ix], img_i[ix]);
        }
    });
    return out;
}

SarImage bpa(const RawData &raw, const FreehandTrajectory &traj_est, const GridSpec &grid)
{
    SarImage img{grid, bpa_magnitude(raw, traj_est, grid)};
    normalize_in_place(img.pixels);
    return img;
}

} // namespace nfsar
