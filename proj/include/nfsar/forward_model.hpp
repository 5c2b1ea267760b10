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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nfsar/geometry.hpp"
#include "nfsar/scene.hpp"

namespace nfsar
{

using cdouble = std::complex<double>;

// Frequency-domain multistatic samples, measurement-major. Measurement m maps to
// (pose, tx, rx) with m = (pose * n_tx + tx) * n_rx + rx.
struct RawData
{
    std::size_t n_poses = 0, n_tx = 0, n_rx = 0;
    std::vector<double> freq_grid; // Hz, strictly increasing
    std::vector<cdouble> samples;  // [n_measurements x n_freq]
    std::string trajectory_ref;

    std::size_t n_measurements() const { return n_poses * n_tx * n_rx; }
    std::size_t n_freq() const { return freq_grid.size(); }

    cdouble &at(std::size_t meas, std::size_t freq) { return samples[meas * n_freq() + freq]; }
    cdouble at(std::size_t meas, std::size_t freq) const { return samples[meas * n_freq() + freq]; }
    std::span<const cdouble> row(std::size_t meas) const { return {samples.data() + meas * n_freq(), n_freq()}; }

    std::vector<double> wavenumbers() const;

    void validate() const;
    // Throws invalid_argument unless the layout matches the trajectory's pose/Tx/Rx counts.
    void check_layout(const FreehandTrajectory &traj) const;

    bool operator==(const RawData &) const = default;
};

// Exact discretized received signal:
//   s(x_T, x_R, k) = sum_t a_t / (R_T R_R) * exp(-j k (R_T + R_R)),
// accumulated in ascending target order. The frequency grid comes from `radar`; the antenna
// positions come from `traj` (whose offsets must equal the radar's).
RawData synthesize(std::span<const PointScatterer> scatterers, const FreehandTrajectory &traj,
                   const RadarConfig &radar);

// Mean |s|^2 over all samples.
double signal_power(const RawData &raw);

// Adds circular complex Gaussian noise at the requested SNR (dB) relative to signal_power.
// snr_db = +infinity returns the input unchanged.
RawData add_noise(const RawData &raw, double snr_db, std::uint64_t seed);

} // namespace nfsar
