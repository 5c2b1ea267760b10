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

#include "nfsar/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "nfsar/error.hpp"
#include "nfsar/random.hpp"

namespace nfsar
{

using ojson = nlohmann::ordered_json;

void GridSpec::validate() const
{
    require(nx >= 8 && ny >= 8, "grid: nx and ny must be >= 8");
    require(width > 0.0 && height > 0.0, "grid: extent must be positive");
}

SarImage SarImage::zeros(const GridSpec &grid)
{
    grid.validate();
    return SarImage{grid, std::vector<double>(grid.size(), 0.0)};
}

void normalize_in_place(std::vector<double> &values)
{
    double peak = 0.0;
    for (double v : values)
        peak = std::max(peak, v);
    if (peak <= 0.0)
        peak = 1.0;
    for (auto &v : values)
        v = std::clamp(v / peak, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Shapes
// ---------------------------------------------------------------------------

namespace
{

struct ContainsVisitor
{
    double x, y;

    bool operator()(const RectShape &s) const
    {
        const double c = std::cos(s.angle), sn = std::sin(s.angle);
        const double u = (x - s.cx) * c + (y - s.cy) * sn;
        const double v = -(x - s.cx) * sn + (y - s.cy) * c;
        return std::abs(u) <= 0.5 * s.width && std::abs(v) <= 0.5 * s.height;
    }

    bool operator()(const DiskShape &s) const
    {
        return std::hypot(x - s.cx, y - s.cy) <= s.radius;
    }

    bool operator()(const RingShape &s) const
    {
        const double r = std::hypot(x - s.cx, y - s.cy);
        return r <= s.outer_radius && r >= s.inner_radius;
    }

    bool operator()(const PolygonShape &s) const
    {
        const double r = std::hypot(x - s.cx, y - s.cy);
        if (s.hole_radius > 0.0 && r < s.hole_radius)
            return false;
        if (r == 0.0)
            return true;
        const double sector = 2.0 * std::numbers::pi / static_cast<double>(s.sides);
        double theta = std::atan2(y - s.cy, x - s.cx) - s.angle;
        theta = std::fmod(theta, sector);
        if (theta < 0.0)
            theta += sector;
        const double apothem = s.circumradius * std::cos(0.5 * sector);
        return r * std::cos(theta - 0.5 * sector) <= apothem;
    }
};

struct RadiusVisitor
{
    double operator()(const RectShape &s) const { return 0.5 * std::hypot(s.width, s.height); }
    double operator()(const DiskShape &s) const { return s.radius; }
    double operator()(const RingShape &s) const { return s.outer_radius; }
    double operator()(const PolygonShape &s) const { return s.circumradius; }
};

} // namespace

bool Shape::contains(double x, double y) const
{
    return std::visit(ContainsVisitor{x, y}, geometry);
}

double Shape::bounding_radius() const
{
    return std::visit(RadiusVisitor{}, geometry);
}

const char *Shape::type_name() const
{
    switch (geometry.index())
    {
    case 0:
        return "rect";
    case 1:
        return "disk";
    case 2:
        return "ring";
    default:
        return "polygon";
    }
}

void Scene::validate() const
{
    for (const auto &p : points)
        require(p.amplitude >= 0.0 && std::isfinite(p.amplitude), "scene: point amplitudes must be finite and >= 0");
    for (const auto &s : shapes)
    {
        require(s.amplitude >= 0.0 && std::isfinite(s.amplitude), "scene: shape amplitudes must be finite and >= 0");
        if (const auto *ring = std::get_if<RingShape>(&s.geometry))
            require(ring->inner_radius >= 0.0 && ring->inner_radius < ring->outer_radius,
                    "scene: ring inner radius must be in [0, outer)");
        if (const auto *poly = std::get_if<PolygonShape>(&s.geometry))
            require(poly->sides >= 3, "scene: polygons need at least 3 sides");
    }
}

void SceneGenSpec::validate() const
{
    require(points_min <= points_max, "scene gen: empty point-count range");
    require(shapes_min <= shapes_max, "scene gen: empty shape-count range");
    require(amplitude_min >= 0.0 && amplitude_min <= amplitude_max, "scene gen: invalid amplitude range");
    require(min_separation >= 0.0, "scene gen: min_separation must be >= 0");
    require(fov_width > 0.0 && fov_height > 0.0, "scene gen: field of view must be positive");
    require(shape_size_min > 0.0 && shape_size_min <= shape_size_max, "scene gen: invalid shape size range");
    require(max_retries >= 1, "scene gen: max_retries must be >= 1");
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

namespace
{

Shape random_shape(Rng &rng, const SceneGenSpec &spec)
{
    constexpr double pi = std::numbers::pi;
    const double size = rng.uniform(spec.shape_size_min, spec.shape_size_max);
    const double half_w = 0.5 * spec.fov_width - size, half_h = 0.5 * spec.fov_height - size;
    if (half_w < 0.0 || half_h < 0.0)
        fail(ErrorCode::generation_failure, "scene gen: field of view too small for the shape size range");
    const double cx = rng.uniform(-half_w, half_w);
    const double cy = rng.uniform(-half_h, half_h);
    const double amplitude = rng.uniform(spec.amplitude_min, spec.amplitude_max);

    Shape shape;
    shape.amplitude = amplitude;
    switch (rng.uniform_int(0, 3))
    {
    case 0:
    {
        const double phi = std::atan(rng.uniform(0.3, 1.0));
        const double scale = 2.0 * size * rng.uniform(0.6, 1.0);
        shape.geometry = RectShape{cx, cy, scale * std::cos(phi), scale * std::sin(phi), rng.uniform(0.0, pi)};
        break;
    }
    case 1:
        shape.geometry = DiskShape{cx, cy, size * rng.uniform(0.6, 1.0)};
        break;
    case 2:
    {
        const double outer = size * rng.uniform(0.6, 1.0);
        shape.geometry = RingShape{cx, cy, outer, outer * rng.uniform(0.4, 0.75)};
        break;
    }
    default:
    {
        const auto sides = static_cast<std::size_t>(rng.uniform_int(3, 8));
        const double radius = size * rng.uniform(0.6, 1.0);
        const double angle = rng.uniform(0.0, 2.0 * pi / static_cast<double>(sides));
        const bool hollow = rng.uniform() < 0.5;
        const double hole_fraction = rng.uniform(0.25, 0.5);
        const double hole = hollow ? hole_fraction * radius * std::cos(pi / static_cast<double>(sides)) : 0.0;
        shape.geometry = PolygonShape{cx, cy, radius, sides, angle, hole};
        break;
    }
    }
    return shape;
}

} // namespace

Scene random_scene(const SceneGenSpec &spec, std::uint64_t seed)
{
    spec.validate();
    Rng rng(derive_seed(seed, SeedStream::scene));

    Scene scene;
    scene.target_plane_z = spec.plane_z;

    const auto n_points = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(spec.points_min), static_cast<std::int64_t>(spec.points_max)));
    const auto n_shapes = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(spec.shapes_min), static_cast<std::int64_t>(spec.shapes_max)));

    for (std::size_t i = 0; i < n_shapes; ++i)
        scene.shapes.push_back(random_shape(rng, spec));

    for (std::size_t i = 0; i < n_points; ++i)
    {
        bool placed = false;
        for (std::size_t attempt = 0; attempt < spec.max_retries && !placed; ++attempt)
        {
            const Vec3 p{rng.uniform(-0.5 * spec.fov_width, 0.5 * spec.fov_width),
                         rng.uniform(-0.5 * spec.fov_height, 0.5 * spec.fov_height), spec.plane_z};
            const bool clear = std::all_of(scene.points.begin(), scene.points.end(), [&](const PointScatterer &q) {
                return distance(p, q.position) >= spec.min_separation;
            });
            if (clear)
            {
                scene.points.push_back({p, rng.uniform(spec.amplitude_min, spec.amplitude_max)});
                placed = true;
            }
        }
        if (!placed)
            fail(ErrorCode::generation_failure, "scene gen: could not place point " + std::to_string(i) +
                                                    " with the requested min_separation after " +
                                                    std::to_string(spec.max_retries) + " retries");
    }
    return scene;
}

// ---------------------------------------------------------------------------
// Rendering and discretization
// ---------------------------------------------------------------------------

std::vector<double> shape_coverage(const Scene &scene, const GridSpec &grid)
{
    grid.validate();
    std::vector<double> cov(grid.size(), 0.0);
    for (const auto &shape : scene.shapes)
    {
        // Only visit the bounding box of the shape.
        const double r = shape.bounding_radius();
        const double cx = std::visit([](const auto &g) { return g.cx; }, shape.geometry);
        const double cy = std::visit([](const auto &g) { return g.cy; }, shape.geometry);
        const auto lo_x = static_cast<long>(std::floor((cx - r + 0.5 * grid.width) / grid.pixel_width())) - 1;
        const auto hi_x = static_cast<long>(std::ceil((cx + r + 0.5 * grid.width) / grid.pixel_width())) + 1;
        const auto lo_y = static_cast<long>(std::floor((cy - r + 0.5 * grid.height) / grid.pixel_height())) - 1;
        const auto hi_y = static_cast<long>(std::ceil((cy + r + 0.5 * grid.height) / grid.pixel_height())) + 1;
        const long nx = static_cast<long>(grid.nx), ny = static_cast<long>(grid.ny);
        for (long iy = std::max(0L, lo_y); iy < std::min(ny, hi_y); ++iy)
            for (long ix = std::max(0L, lo_x); ix < std::min(nx, hi_x); ++ix)
            {
                const auto uix = static_cast<std::size_t>(ix), uiy = static_cast<std::size_t>(iy);
                if (shape.contains(grid.x_at(uix), grid.y_at(uiy)))
                {
                    double &c = cov[uiy * grid.nx + uix];
                    c = std::max(c, shape.amplitude);
                }
            }
    }
    return cov;
}

SarImage rasterize_ideal(const Scene &scene, const GridSpec &grid)
{
    scene.validate();
    SarImage img{grid, shape_coverage(scene, grid)};

    const double two_sigma2 = 2.0 * kPointSplatSigmaPx * kPointSplatSigmaPx;
    const double cutoff_r2 = -two_sigma2 * std::log(kSplatCutoff);
    const auto reach = static_cast<long>(std::ceil(std::sqrt(cutoff_r2)));
    const long nx = static_cast<long>(grid.nx), ny = static_cast<long>(grid.ny);

    for (const auto &pt : scene.points)
    {
        // Continuous pixel coordinates: pixel centers sit on integers.
        const double px = (pt.position.x + 0.5 * grid.width) / grid.pixel_width() - 0.5;
        const double py = (pt.position.y + 0.5 * grid.height) / grid.pixel_height() - 0.5;
        const long cx = std::lround(px), cy = std::lround(py);
        for (long iy = std::max(0L, cy - reach); iy <= std::min(ny - 1, cy + reach); ++iy)
            for (long ix = std::max(0L, cx - reach); ix <= std::min(nx - 1, cx + reach); ++ix)
            {
                const double r2 = (static_cast<double>(ix) - px) * (static_cast<double>(ix) - px) +
                                  (static_cast<double>(iy) - py) * (static_cast<double>(iy) - py);
                if (r2 > cutoff_r2)
                    continue;
                double &v = img.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
                v = std::max(v, pt.amplitude * std::exp(-r2 / two_sigma2));
            }
    }

    normalize_in_place(img.pixels);
    return img;
}

std::vector<PointScatterer> discretize_scene(const Scene &scene, const GridSpec &grid)
{
    scene.validate();
    std::vector<PointScatterer> out = scene.points;
    const auto cov = shape_coverage(scene, grid);
    const double weight = grid.pixel_area() / kReferenceCellArea;
    for (std::size_t iy = 0; iy < grid.ny; ++iy)
        for (std::size_t ix = 0; ix < grid.nx; ++ix)
        {
            const double a = cov[iy * grid.nx + ix];
            if (a > 0.0)
                out.push_back({Vec3{grid.x_at(ix), grid.y_at(iy), scene.target_plane_z}, a * weight});
        }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string scene_to_json(const Scene &scene)
{
    ojson j;
    j["target_plane_z"] = scene.target_plane_z;
    j["points"] = ojson::array();
    for (const auto &p : scene.points)
        j["points"].push_back({{"position", {p.position.x, p.position.y, p.position.z}}, {"amplitude", p.amplitude}});
    j["shapes"] = ojson::array();
    for (const auto &s : scene.shapes)
    {
        ojson o;
        o["type"] = s.type_name();
        std::visit(
            [&](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                o["center"] = {g.cx, g.cy};
                if constexpr (std::is_same_v<T, RectShape>)
                {
                    o["width"] = g.width;
                    o["height"] = g.height;
                    o["angle"] = g.angle;
                }
                else if constexpr (std::is_same_v<T, DiskShape>)
                {
                    o["radius"] = g.radius;
                }
                else if constexpr (std::is_same_v<T, RingShape>)
                {
                    o["outer_radius"] = g.outer_radius;
                    o["inner_radius"] = g.inner_radius;
                }
                else
                {
                    o["circumradius"] = g.circumradius;
                    o["sides"] = g.sides;
                    o["angle"] = g.angle;
                    o["hole_radius"] = g.hole_radius;
                }
            },
            s.geometry);
        o["amplitude"] = s.amplitude;
        j["shapes"].push_back(std::move(o));
    }
    return j.dump(1) + "\n";
}

Scene scene_from_json(const std::string &text)
{
    try
    {
        const auto j = ojson::parse(text);
        Scene scene;
        scene.target_plane_z = j.at("target_plane_z").get<double>();
        for (const auto &p : j.at("points"))
        {
            const auto &pos = p.at("position");
            scene.points.push_back(
                {Vec3{pos.at(0).get<double>(), pos.at(1).get<double>(), pos.at(2).get<double>()},
                 p.at("amplitude").get<double>()});
        }
        for (const auto &o : j.at("shapes"))
        {
            const auto type = o.at("type").get<std::string>();
            const double cx = o.at("center").at(0).get<double>(), cy = o.at("center").at(1).get<double>();
            Shape s;
            s.amplitude = o.at("amplitude").get<double>();
            if (type == "rect")
                s.geometry = RectShape{cx, cy, o.at("width").get<double>(), o.at("height").get<double>(),
                                       o.at("angle").get<double>()};
            else if (type == "disk")
                s.geometry = DiskShape{cx, cy, o.at("radius").get<double>()};
            else if (type == "ring")
                s.geometry = RingShape{cx, cy, o.at("outer_radius").get<double>(), o.at("inner_radius").get<double>()};
            else if (type == "polygon")
                s.geometry = PolygonShape{cx, cy, o.at("circumradius").get<double>(), o.at("sides").get<std::size_t>(),
                                          o.at("angle").get<double>(), o.at("hole_radius").get<double>()};
            else
                fail(ErrorCode::corrupt_data, "scene json: unknown shape type '" + type + "'");
            scene.shapes.push_back(std::move(s));
        }
        scene.validate();
        return scene;
    }
    catch (const nlohmann::json::exception &e)
    {
        fail(ErrorCode::corrupt_data, std::string("scene json: ") + e.what());
    }
}

} // namespace nfsar
