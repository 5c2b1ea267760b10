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
#include <string>
#include <vector>

#include "nfsar/vec3.hpp"

namespace nfsar
{

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kDefaultStandoff = 0.3; // Z0, meters

// Stepped-frequency radar with a MIMO antenna layout. Offsets are relative to the device origin.
struct RadarConfig
{
    double f_start = 77e9;
    double f_stop = 81e9;
    std::size_t n_freq = 64;
    std::vector<Vec3> tx_offsets;
    std::vector<Vec3> rx_offsets;

    void validate() const;

    std::vector<double> frequencies() const;
    std::vector<double> wavenumbers() const; // k = 2*pi*f/c

    double center_frequency() const { return 0.5 * (f_start + f_stop); }
    double center_wavelength() const { return kSpeedOfLight / center_frequency(); }

    // Single co-located Tx/Rx at the device origin.
    static RadarConfig monostatic(double f_start = 77e9, double f_stop = 81e9, std::size_t n_freq = 64);

    // 2 Tx x 4 Rx on a vertical (y) line, Rx at lambda/2 pitch, Tx at +-2 pitches. The
    // eight Tx/Rx midpoints form a uniform lambda/4 virtual line.
    static RadarConfig mimo_default(double f_start = 77e9, double f_stop = 81e9, std::size_t n_freq = 64);

    bool operator==(const RadarConfig &) const = default;
};

// Uniform planar raster, centered on the z axis.
struct ApertureSpec
{
    double width = 0.128;
    double height = 0.128;
    std::size_t nx = 64;
    std::size_t ny = 64;
    double z = 0.0;

    void validate() const;
    double spacing_x() const { return width / static_cast<double>(nx - 1); }
    double spacing_y() const { return height / static_cast<double>(ny - 1); }

    bool operator==(const ApertureSpec &) const = default;
};

enum class TrajectoryKind
{
    planar_raster,
    freehand,
};

const char *to_string(TrajectoryKind kind) noexcept;
TrajectoryKind trajectory_kind_from_string(const std::string &s);

// Ordered multistatic sample poses of a rigid, non-rotating device.
//
// Measurement index for (pose p, tx t, rx r) is (p * n_tx + t) * n_rx + r. z_ref is the plane of
// the planar baseline raster; z0 is the standoff from that plane to the target/image plane,
// which therefore sits at z = z_ref + z0.
struct FreehandTrajectory
{
    TrajectoryKind kind = TrajectoryKind::planar_raster;
    double z_ref = 0.0;
    std::optional<double> z0;
    std::vector<Vec3> poses; // device origin per pose
    std::vector<Vec3> tx_offsets;
    std::vector<Vec3> rx_offsets;
    std::optional<ApertureSpec> aperture; // baseline raster the poses were derived from

    void validate() const;

    std::size_t n_poses() const { return poses.size(); }
    std::size_t n_tx() const { return tx_offsets.size(); }
    std::size_t n_rx() const { return rx_offsets.size(); }
    std::size_t n_measurements() const { return poses.size() * tx_offsets.size() * rx_offsets.size(); }

    Vec3 tx_position(std::size_t pose, std::size_t tx) const { return poses[pose] + tx_offsets[tx]; }
    Vec3 rx_position(std::size_t pose, std::size_t rx) const { return poses[pose] + rx_offsets[rx]; }

    double target_plane_z() const;

    bool operator==(const FreehandTrajectory &) const = default;
};

struct JitterSpec
{
    double sigma_xy = 0.0;      // marginal std of in-plane hand jitter, meters
    double z_span = 0.0;        // peak-to-peak bound of the depth excursion, meters
    std::size_t smoothness = 8; // moving-average window length in poses
};

struct PerturbationSpec
{
    Vec3 sigma;             // per-axis std of the position-estimate error, meters
    std::uint64_t seed = 0;
};

// One entry per (pose, tx, rx) triple, in measurement order.
struct VirtualElement
{
    Vec3 position; // Tx/Rx midpoint
    double dx = 0.0; // x_T - x_R
    double dy = 0.0; // y_T - y_R
    double dz = 0.0; // z_ref - midpoint z (positive when the device is behind the reference plane)
};

FreehandTrajectory make_raster_trajectory(const ApertureSpec &aperture, const RadarConfig &radar,
                                          std::optional<double> z0 = kDefaultStandoff);

FreehandTrajectory make_freehand_trajectory(const ApertureSpec &base, const RadarConfig &radar,
                                            const JitterSpec &jitter, std::uint64_t seed,
                                            std::optional<double> z0 = kDefaultStandoff);

// Returns the estimated trajectory: every device origin displaced by iid Gaussian noise.
FreehandTrajectory perturb_trajectory(const FreehandTrajectory &traj, const PerturbationSpec &spec);

std::vector<VirtualElement> virtual_elements(const FreehandTrajectory &traj);

std::string trajectory_to_json(const FreehandTrajectory &traj);
FreehandTrajectory trajectory_from_json(const std::string &text);

std::string radar_to_json(const RadarConfig &radar);
RadarConfig radar_from_json(const std::string &text);

} // namespace nfsar
