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
#include <optional>
#include <vector>

#include "nfsar/forward_model.hpp"
#include "nfsar/geometry.hpp"

namespace nfsar
{

// Uniform grid of virtual monostatic elements on the reference plane z = z.
// Node (ix, iy) sits at (origin_x + ix * spacing_x, origin_y + iy * spacing_y); row-major storage.
struct VirtualGrid
{
    std::size_t nx = 0, ny = 0;
    double spacing_x = 0.0, spacing_y = 0.0;
    double origin_x = 0.0, origin_y = 0.0;
    double z = 0.0;

    void validate() const;
    std::size_t size() const { return nx * ny; }
    double x_at(std::size_t ix) const { return origin_x + spacing_x * static_cast<double>(ix); }
    double y_at(std::size_t iy) const { return origin_y + spacing_y * static_cast<double>(iy); }

    // Index of the nearest node, or nullopt when (x, y) rounds to a node outside the grid.
    std::optional<std::size_t> nearest(double x, double y) const;

    bool operator==(const VirtualGrid &) const = default;
};

// The baseline raster of `traj`, padded with whole cells so every Tx/Rx midpoint of the array
// lands inside (plus one guard cell per side for freehand trajectories). For a monostatic planar
// raster this is exactly the raster.
VirtualGrid virtual_grid_for(const FreehandTrajectory &traj);

struct VirtualMonostaticData
{
    VirtualGrid grid;
    std::vector<double> freq_grid;
    std::vector<cdouble> samples;        // [grid.size() x n_freq], empty cells zero-filled
    std::vector<std::uint32_t> occupancy; // samples averaged into each cell
    std::size_t dropped = 0;             // measurements that fell outside the grid

    std::size_t n_freq() const { return freq_grid.size(); }
    cdouble at(std::size_t cell, std::size_t freq) const { return samples[cell * n_freq() + freq]; }

    bool operator==(const VirtualMonostaticData &) const = default;
};

// Residual multistatic/multi-planar phase term, meters:
//   2 d_z + (d_x^2 + d_y^2) / (4 Z0)
double beta(double d_x, double d_y, double d_z, double z0);

// Per-measurement projection s * exp(+j k beta_l), before any regridding. Phase-only.
RawData compensate_phase(const RawData &raw, const FreehandTrajectory &traj_est, double z0);

// Nearest-node binning of per-measurement samples by Tx/Rx midpoint; cells holding several
// samples are complex-averaged. No phase correction is applied here.
VirtualMonostaticData bin_to_grid(const RawData &raw, const FreehandTrajectory &traj_est, const VirtualGrid &grid);

// compensate_phase followed by bin_to_grid onto `grid` (default: virtual_grid_for(traj_est)).
VirtualMonostaticData empm_compensate(const RawData &raw, const FreehandTrajectory &traj_est, double z0,
                                      std::optional<VirtualGrid> grid = std::nullopt);

} // namespace nfsar
