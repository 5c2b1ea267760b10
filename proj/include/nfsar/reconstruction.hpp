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

#include <string>
#include <vector>

#include "nfsar/empm.hpp"
#include "nfsar/forward_model.hpp"
#include "nfsar/geometry.hpp"
#include "nfsar/scene.hpp"

namespace nfsar
{

// Back-projection on the plane grid.plane_z:
//   o(x) = sum_l sum_k s_l(k) exp(+j k (R_T + R_R)),
// using the antenna positions of `traj_est`. Returns |o| (not normalized).
std::vector<double> bpa_magnitude(const RawData &raw, const FreehandTrajectory &traj_est, const GridSpec &grid);

// bpa_magnitude normalized to [0, 1].
SarImage bpa(const RawData &raw, const FreehandTrajectory &traj_est, const GridSpec &grid);

// Near-field monostatic range migration on a uniform virtual array:
//   2-D spatial FFT (zero-padded x2) -> k_z = sqrt(4k^2 - k_x^2 - k_y^2), evanescent terms dropped
//   -> multiply by exp(+j k_z Z0) -> linear Stolt resampling onto a uniform k_z grid
//   -> sum over k_z (the z = Z0 slice) -> inverse 2-D FFT -> bilinear resampling of |.| onto `grid`.
// z0 is the standoff from the virtual array plane to the image plane. Returns |o| (not normalized).
std::vector<double> rma_magnitude(const VirtualMonostaticData &virt, double z0, const GridSpec &grid);

SarImage rma(const VirtualMonostaticData &virt, double z0, const GridSpec &grid);

// empm_compensate followed by rma, on the default virtual grid of traj_est.
SarImage empm_rma(const RawData &raw, const FreehandTrajectory &traj_est, double z0, const GridSpec &grid);

enum class Algorithm
{
    bpa,
    rma, // binning onto the virtual grid without phase compensation, then RMA
    empm_rma,
};

const char *to_string(Algorithm algo) noexcept;
Algorithm algorithm_from_string(const std::string &s); // "bpa", "rma", "empm-rma"

SarImage reconstruct(Algorithm algo, const RawData &raw, const FreehandTrajectory &traj_est, double z0,
                     const GridSpec &grid);

} // namespace nfsar
