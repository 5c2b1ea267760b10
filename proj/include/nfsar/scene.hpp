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
#include <string>
#include <variant>
#include <vector>

#include "nfsar/geometry.hpp"
#include "nfsar/vec3.hpp"

namespace nfsar
{

// Uniform pixel grid on the target plane, centered on the z axis. Pixel (ix, iy) covers the cell
// whose center is returned by x_at(ix), y_at(iy); storage is row-major (iy * nx + ix).
struct GridSpec
{
    std::size_t nx = 128;
    std::size_t ny = 128;
    double width = 0.2;
    double height = 0.2;
    double plane_z = kDefaultStandoff;

    void validate() const;

    double pixel_width() const { return width / static_cast<double>(nx); }
    double pixel_height() const { return height / static_cast<double>(ny); }
    double pixel_area() const { return pixel_width() * pixel_height(); }
    double x_at(std::size_t ix) const { return -0.5 * width + (static_cast<double>(ix) + 0.5) * pixel_width(); }
    double y_at(std::size_t iy) const { return -0.5 * height + (static_cast<double>(iy) + 0.5) * pixel_height(); }
    std::size_t size() const { return nx * ny; }

    bool operator==(const GridSpec &) const = default;
};

// 2-D real image, normalized magnitude in [0, 1].
struct SarImage
{
    GridSpec grid;
    std::vector<double> pixels;

    static SarImage zeros(const GridSpec &grid);

    double &at(std::size_t ix, std::size_t iy) { return pixels[iy * grid.nx + ix]; }
    double at(std::size_t ix, std::size_t iy) const { return pixels[iy * grid.nx + ix]; }

    bool operator==(const SarImage &) const = default;
};

// Divides by the maximum (1 for an all-zero image) and clips to [0, 1].
void normalize_in_place(std::vector<double> &values);

struct PointScatterer
{
    Vec3 position;
    double amplitude = 1.0;

    bool operator==(const PointScatterer &) const = default;
};

struct RectShape
{
    double cx = 0.0, cy = 0.0;
    double width = 0.0, height = 0.0;
    double angle = 0.0; // radians, counter-clockwise

    bool operator==(const RectShape &) const = default;
};

struct DiskShape
{
    double cx = 0.0, cy = 0.0;
    double radius = 0.0;

    bool operator==(const DiskShape &) const = default;
};

// Disk minus a concentric disk.
struct RingShape
{
    double cx = 0.0, cy = 0.0;
    double outer_radius = 0.0;
    double inner_radius = 0.0;

    bool operator==(const RingShape &) const = default;
};

// Regular polygon, optionally with a concentric circular cavity (hole_radius == 0: solid).
struct PolygonShape
{
    double cx = 0.0, cy = 0.0;
    double circumradius = 0.0;
    std::size_t sides = 3;
    double angle = 0.0;
    double hole_radius = 0.0;

    bool operator==(const PolygonShape &) const = default;
};

struct Shape
{
    std::variant<RectShape, DiskShape, RingShape, PolygonShape> geometry;
    double amplitude = 1.0;

    bool contains(double x, double y) const;
    double bounding_radius() const;
    const char *type_name() const;

    bool operator==(const Shape &) const = default;
};

struct Scene
{
    std::vector<PointScatterer> points;
    std::vector<Shape> shapes;
    double target_plane_z = kDefaultStandoff;

    void validate() const;

    bool operator==(const Scene &) const = default;
};

struct SceneGenSpec
{
    std::size_t points_min = 1, points_max = 6;
    std::size_t shapes_min = 1, shapes_max = 3;
    double amplitude_min = 0.5, amplitude_max = 1.0;
    double min_separation = 0.01; // between point scatterers, meters
    double fov_width = 0.16, fov_height = 0.16;
    double shape_size_min = 0.012, shape_size_max = 0.035; // bounding radius, meters
    double plane_z = kDefaultStandoff;
    std::size_t max_retries = 1000; // per point scatterer

    void validate() const;
};

Scene random_scene(const SceneGenSpec &spec, std::uint64_t seed);

// Per-cell shape reflectivity: max amplitude over the shapes containing the cell center, 0 elsewhere.
std::vector<double> shape_coverage(const Scene &scene, const GridSpec &grid);

inline constexpr double kPointSplatSigmaPx = 0.75;
inline constexpr double kSplatCutoff = 1e-3; // splat values below this fraction of the amplitude are dropped

// Ideal image: shapes filled with their amplitude, points splatted as Gaussians, combined by max.
SarImage rasterize_ideal(const Scene &scene, const GridSpec &grid);

// Reflectivity per cell is scaled by cell_area / kReferenceCellArea so that the total shape
// reflectivity does not depend on the discretization grid. The reference is the cell of the
// default 128 x 128 grid over 0.2 m x 0.2 m.
inline constexpr double kReferenceCellArea = (0.2 / 128.0) * (0.2 / 128.0);

// Point cloud for the forward model: points unchanged, then one scatterer per covered cell center.
std::vector<PointScatterer> discretize_scene(const Scene &scene, const GridSpec &grid);

std::string scene_to_json(const Scene &scene);
Scene scene_from_json(const std::string &text);

} // namespace nfsar
