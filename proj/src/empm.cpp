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

#include "nfsar/empm.hpp"

#include <algorithm>
#include <cmath>

#include "nfsar/error.hpp"
#include "nfsar/parallel.hpp"

namespace nfsar
{

void VirtualGrid::validate() const
{
    require(nx >= 1 && ny >= 1, "virtual grid: empty");
    require(spacing_x > 0.0 && spacing_y > 0.0, "virtual grid: spacing must be positive");
}

std::optional<std::size_t> VirtualGrid::nearest(double x, double y) const
{
    const double fx = std::round((x - origin_x) / spacing_x);
    const double fy = std::round((y - origin_y) / spacing_y);
    if (!(fx >= 0.0 && fy >= 0.0 && fx < static_cast<double>(nx) && fy < static_cast<double>(ny)))
        return std::nullopt;
    return static_cast<std::size_t>(fy) * nx + static_cast<std::size_t>(fx);
}

VirtualGrid virtual_grid_for(const FreehandTrajectory &traj)
{
    if (!traj.aperture)
        fail(ErrorCode::invalid_state, "virtual grid: trajectory carries no baseline aperture");
    const ApertureSpec &a = *traj.aperture;
    a.validate();

    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const auto &t : traj.tx_offsets)
        for (const auto &r : traj.rx_offsets)
        {
            const Vec3 mid = (t + r) * 0.5;
            min_x = std::min(min_x, mid.x);
            max_x = std::max(max_x, mid.x);
            min_y = std::min(min_y, mid.y);
            max_y = std::max(max_y, mid.y);
        }

    VirtualGrid g;
    g.spacing_x = a.spacing_x();
    g.spacing_y = a.spacing_y();
    const std::size_t guard = traj.kind == TrajectoryKind::freehand ? 1 : 0;
    // Cells needed so that the outermost midpoint rounds onto the grid.
    auto pad = [](double extent, double spacing) {
        return static_cast<std::size_t>(std::max(0.0, std::round(extent / spacing)));
    };
    const std::size_t lo_x = pad(-min_x, g.spacing_x) + guard, hi_x = pad(max_x, g.spacing_x) + guard;
    const std::size_t lo_y = pad(-min_y, g.spacing_y) + guard, hi_y = pad(max_y, g.spacing_y) + guard;
    g.nx = a.nx + lo_x + hi_x;
    g.ny = a.ny + lo_y + hi_y;
    g.origin_x = -0.5 * a.width - static_cast<double>(lo_x) * g.spacing_x;
    g.origin_y = -0.5 * a.height - static_cast<double>(lo_y) * g.spacing_y;
    g.z = traj.z_ref;
    return g;
}

double beta(double d_x, double d_y, double d_z, double z0)
{
    require(z0 > 0.0, "beta: Z0 must be positive");
    return 2.0 * d_z + (d_x * d_x + d_y * d_y) / (4.0 * z0);
}

RawData compensate_phase(const RawData &raw, const FreehandTrajectory &traj_est, double z0)
{
    require(z0 > 0.0, "empm: Z0 must be positive");
    raw.check_layout(traj_est);

    FreehandTrajectory t = traj_est;
    t.z0 = z0;
    const auto elements = virtual_elements(t);
    const auto k = raw.wavenumbers();
    const std::size_t nf = raw.n_freq();

    RawData out = raw;
    parallel_for(raw.n_measurements(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m)
        {
            const auto &e = elements[m];
            const double b = beta(e.dx, e.dy, e.dz, z0);
            cdouble *row = out.samples.data() + m * nf;
            for (std::size_t n = 0; n < nf; ++n)
                row[n] *= cdouble{std::cos(k[n] * b), std::sin(k[n] * b)};
        }
    });
    return out;
}

VirtualMonostaticData bin_to_grid(const RawData &raw, const FreehandTrajectory &traj_est, const VirtualGrid &grid)
{
    grid.validate();
    raw.check_layout(traj_est);
    const std::size_t nf = raw.n_freq();

    VirtualMonostaticData v;
    v.grid = grid;
    v.freq_grid = raw.freq_grid;
    v.samples.assign(grid.size() * nf, cdouble{});
    v.occupancy.assign(grid.size(), 0);

    // Serial in measurement order: the accumulation order, and therefore the result, never
    // depends on the worker count.
    std::size_t m = 0;
    for (std::size_t p = 0; p < traj_est.n_poses(); ++p)
        for (std::size_t t = 0; t < traj_est.n_tx(); ++t)
            for (std::size_t r = 0; r < traj_est.n_rx(); ++r, ++m)
            {
                const Vec3 mid = (traj_est.tx_position(p, t) + traj_est.rx_position(p, r)) * 0.5;
                const auto cell = grid.nearest(mid.x, mid.y);
                if (!cell)
                {
                    ++v.dropped;
                    continue;
                }
                ++v.occupancy[*cell];
                const cdouble *src = raw.samples.data() + m * nf;
                cdouble *dst = v.samples.data() + *cell * nf;
                for (std::size_t n = 0; n < nf; ++n)
                    dst[n] += src[n];
            }

    for (std::size_t c = 0; c < grid.size(); ++c)
    {
        if (v.occupancy[c] > 1)
        {
            const double inv = 1.0 / static_cast<double>(v.occupancy[c]);
            for (std::size_t n = 0; n < nf; ++n)
                v.samples[c * nf + n] *= inv;
        }
    }
    return v;
}

VirtualMonostaticData empm_compensate(const RawData &raw, const FreehandTrajectory &traj_est, double z0,
                                      std::optional<VirtualGrid> grid)
{
    const VirtualGrid g = grid ? *grid : virtual_grid_for(traj_est);
    return bin_to_grid(compensate_phase(raw, traj_est, z0), traj_est, g);
}

} // namespace nfsar
