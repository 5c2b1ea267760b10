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

#include "nfsar/nfsar.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "nfsar/comparison.hpp"
#include "nfsar/dataset.hpp"
#include "nfsar/empm.hpp"
#include "nfsar/error.hpp"
#include "nfsar/forward_model.hpp"
#include "nfsar/geometry.hpp"
#include "nfsar/io.hpp"
#include "nfsar/metrics.hpp"
#include "nfsar/parallel.hpp"
#include "nfsar/profile.hpp"
#include "nfsar/random.hpp"
#include "nfsar/reconstruction.hpp"
#include "nfsar/scene.hpp"

struct nfsar_profile
{
    nfsar::Profile v;
};
struct nfsar_radar
{
    nfsar::RadarConfig v;
};
struct nfsar_trajectory
{
    nfsar::FreehandTrajectory v;
};
struct nfsar_scene
{
    nfsar::Scene v;
};
struct nfsar_raw
{
    nfsar::RawData v;
};
struct nfsar_virtual
{
    nfsar::VirtualMonostaticData v;
};
struct nfsar_image
{
    nfsar::SarImage v;
};

namespace
{

thread_local std::string t_last_error;

nfsar_status status_of(nfsar::ErrorCode code)
{
    using nfsar::ErrorCode;
    switch (code)
    {
    case ErrorCode::invalid_argument:
        return NFSAR_ERR_INVALID_ARGUMENT;
    case ErrorCode::invalid_state:
        return NFSAR_ERR_INVALID_STATE;
    case ErrorCode::singular_geometry:
        return NFSAR_ERR_SINGULAR_GEOMETRY;
    case ErrorCode::generation_failure:
        return NFSAR_ERR_GENERATION_FAILURE;
    case ErrorCode::io_error:
        return NFSAR_ERR_IO;
    case ErrorCode::corrupt_data:
        return NFSAR_ERR_CORRUPT_DATA;
    case ErrorCode::numeric_error:
        return NFSAR_ERR_NUMERIC;
    }
    return NFSAR_ERR_INTERNAL;
}

template <typename F>
nfsar_status guarded(F &&f) noexcept
{
    try
    {
        f();
        return NFSAR_OK;
    }
    catch (const nfsar::Error &e)
    {
        t_last_error = e.what();
        return status_of(e.code());
    }
    catch (const std::bad_alloc &)
    {
        t_last_error = "out of memory";
        return NFSAR_ERR_OUT_OF_MEMORY;
    }
    catch (const std::exception &e)
    {
        t_last_error = e.what();
        return NFSAR_ERR_INTERNAL;
    }
    catch (...)
    {
        t_last_error = "unknown error";
        return NFSAR_ERR_INTERNAL;
    }
}

template <typename T>
const T &deref(const T *p, const char *what)
{
    if (!p)
        nfsar::fail(nfsar::ErrorCode::invalid_argument, std::string(what) + " is NULL");
    return *p;
}

template <typename T>
T &deref(T *p, const char *what)
{
    if (!p)
        nfsar::fail(nfsar::ErrorCode::invalid_argument, std::string(what) + " is NULL");
    return *p;
}

void check_out(const void *p)
{
    if (!p)
        nfsar::fail(nfsar::ErrorCode::invalid_argument, "output pointer is NULL");
}

const char *check_str(const char *s, const char *what)
{
    if (!s)
        nfsar::fail(nfsar::ErrorCode::invalid_argument, std::string(what) + " is NULL");
    return s;
}

char *dup_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void check_capacity(std::size_t capacity, std::size_t needed)
{
    if (capacity < needed)
        nfsar::fail(nfsar::ErrorCode::invalid_argument,
                    "buffer too small: need " + std::to_string(needed) + ", got " + std::to_string(capacity));
}

nfsar::ApertureSpec to_cpp(const nfsar_aperture &a)
{
    return {a.width, a.height, a.nx, a.ny, a.z};
}

nfsar::GridSpec to_cpp(const nfsar_grid &g)
{
    return {g.nx, g.ny, g.width, g.height, g.plane_z};
}

nfsar_grid to_c(const nfsar::GridSpec &g)
{
    return {g.nx, g.ny, g.width, g.height, g.plane_z};
}

nfsar::Algorithm to_cpp(nfsar_algorithm a)
{
    switch (a)
    {
    case NFSAR_ALGO_BPA:
        return nfsar::Algorithm::bpa;
    case NFSAR_ALGO_RMA:
        return nfsar::Algorithm::rma;
    case NFSAR_ALGO_EMPM_RMA:
        return nfsar::Algorithm::empm_rma;
    }
    nfsar::fail(nfsar::ErrorCode::invalid_argument, "unknown algorithm");
}

nfsar::Split to_cpp(nfsar_split s)
{
    if (s == NFSAR_SPLIT_TRAIN)
        return nfsar::Split::train;
    if (s == NFSAR_SPLIT_TEST)
        return nfsar::Split::test;
    nfsar::fail(nfsar::ErrorCode::invalid_argument, "unknown split");
}

std::vector<nfsar::Vec3> packed_vectors(const double *xyz, std::size_t n)
{
    if (n > 0 && !xyz)
        nfsar::fail(nfsar::ErrorCode::invalid_argument, "offset array is NULL");
    std::vector<nfsar::Vec3> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
    return out;
}

void copy_complex(const std::vector<nfsar::cdouble> &src, double *re_im, std::size_t capacity)
{
    check_out(re_im);
    check_capacity(capacity, 2 * src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
    {
        re_im[2 * i] = src[i].real();
        re_im[2 * i + 1] = src[i].imag();
    }
}

template <typename H, typename V>
void emit(H **out, V &&value)
{
    check_out(out);
    *out = new H{std::forward<V>(value)};
}

std::string sample_meta_json(const nfsar::DatasetSample &s)
{
    // Re-encode and cut the meta block out of the sample file; keeps one JSON writer.
    const auto bytes = nfsar::encode_sample(s);
    nfsar::ByteReader r(bytes);
    r.expect_magic("NFSS");
    r.get_u32();
    r.get_u64();
    nfsar::decode_image(r);
    nfsar::decode_image(r);
    std::string meta(r.get_u32(), '\0');
    r.get_bytes(meta.data(), meta.size());
    return meta;
}

} // namespace

extern "C" {

// ---- library ---------------------------------------------------------------------------

const char *nfsar_version(void)
{
    return "1.0.0";
}

const char *nfsar_last_error(void)
{
    return t_last_error.c_str();
}

const char *nfsar_status_string(nfsar_status status)
{
    switch (status)
    {
    case NFSAR_OK:
        return "ok";
    case NFSAR_ERR_INVALID_ARGUMENT:
        return "invalid-argument";
    case NFSAR_ERR_INVALID_STATE:
        return "invalid-state";
    case NFSAR_ERR_SINGULAR_GEOMETRY:
        return "singular-geometry";
    case NFSAR_ERR_GENERATION_FAILURE:
        return "generation-failure";
    case NFSAR_ERR_IO:
        return "io-error";
    case NFSAR_ERR_CORRUPT_DATA:
        return "corrupt-data";
    case NFSAR_ERR_NUMERIC:
        return "numeric-error";
    case NFSAR_ERR_OUT_OF_MEMORY:
        return "out-of-memory";
    case NFSAR_ERR_INTERNAL:
        return "internal-error";
    }
    return "unknown";
}

void nfsar_string_free(char *s)
{
    std::free(s);
}

void nfsar_set_threads(unsigned n)
{
    nfsar::set_thread_count(n);
}

unsigned nfsar_get_threads(void)
{
    return nfsar::thread_count();
}

uint64_t nfsar_derive_seed(uint64_t base, uint32_t stream, uint64_t index)
{
    return nfsar::derive_seed(base, static_cast<nfsar::SeedStream>(stream), index);
}

// ---- profiles --------------------------------------------------------------------------

nfsar_status nfsar_profile_create(const char *name, nfsar_profile **out)
{
    return guarded([&] { emit(out, nfsar::profile_by_name(check_str(name, "name"))); });
}

nfsar_status nfsar_profile_from_json(const char *json, nfsar_profile **out)
{
    return guarded([&] { emit(out, nfsar::profile_from_json(check_str(json, "json"))); });
}

nfsar_status nfsar_profile_to_json(const nfsar_profile *p, char **out)
{
    return guarded([&] {
        check_out(out);
        *out = dup_string(nfsar::profile_to_json(deref(p, "profile").v));
    });
}

nfsar_status nfsar_profile_set_counts(nfsar_profile *p, size_t n_train, size_t n_test)
{
    return guarded([&] {
        auto &prof = deref(p, "profile").v;
        prof.n_train = n_train;
        prof.n_test = n_test;
    });
}

nfsar_status nfsar_profile_radar(const nfsar_profile *p, nfsar_radar **out)
{
    return guarded([&] { emit(out, deref(p, "profile").v.radar); });
}

nfsar_status nfsar_profile_aperture(const nfsar_profile *p, nfsar_aperture *out)
{
    return guarded([&] {
        check_out(out);
        const auto &a = deref(p, "profile").v.aperture;
        *out = {a.width, a.height, a.nx, a.ny, a.z};
    });
}

nfsar_status nfsar_profile_grid(const nfsar_profile *p, nfsar_grid *out)
{
    return guarded([&] {
        check_out(out);
        *out = to_c(deref(p, "profile").v.grid);
    });
}

nfsar_status nfsar_profile_z0(const nfsar_profile *p, double *out)
{
    return guarded([&] {
        check_out(out);
        *out = deref(p, "profile").v.z0;
    });
}

void nfsar_profile_free(nfsar_profile *p)
{
    delete p;
}

// ---- radar -----------------------------------------------------------------------------

nfsar_status nfsar_radar_monostatic(double f_start, double f_stop, size_t n_freq, nfsar_radar **out)
{
    return guarded([&] {
        auto r = nfsar::RadarConfig::monostatic(f_start, f_stop, n_freq);
        r.validate();
        emit(out, std::move(r));
    });
}

nfsar_status nfsar_radar_mimo_default(double f_start, double f_stop, size_t n_freq, nfsar_radar **out)
{
    return guarded([&] {
        auto r = nfsar::RadarConfig::mimo_default(f_start, f_stop, n_freq);
        r.validate();
        emit(out, std::move(r));
    });
}

nfsar_status nfsar_radar_create(double f_start, double f_stop, size_t n_freq, const double *tx_xyz, size_t n_tx,
                                const double *rx_xyz, size_t n_rx, nfsar_radar **out)
{
    return guarded([&] {
        nfsar::RadarConfig r{f_start, f_stop, n_freq, packed_vectors(tx_xyz, n_tx), packed_vectors(rx_xyz, n_rx)};
        r.validate();
        emit(out, std::move(r));
    });
}

nfsar_status nfsar_radar_from_json(const char *json, nfsar_radar **out)
{
    return guarded([&] { emit(out, nfsar::radar_from_json(check_str(json, "json"))); });
}

nfsar_status nfsar_radar_to_json(const nfsar_radar *r, char **out)
{
    return guarded([&] {
        check_out(out);
        *out = dup_string(nfsar::radar_to_json(deref(r, "radar").v));
    });
}

nfsar_status nfsar_radar_center_wavelength(const nfsar_radar *r, double *out)
{
    return guarded([&] {
        check_out(out);
        *out = deref(r, "radar").v.center_wavelength();
    });
}

void nfsar_radar_free(nfsar_radar *r)
{
    delete r;
}

// ---- trajectories ----------------------------------------------------------------------

nfsar_status nfsar_trajectory_raster(const nfsar_aperture *aperture, const nfsar_radar *radar, double z0,
                                     nfsar_trajectory **out)
{
    return guarded([&] {
        std::optional<double> standoff;
        if (z0 > 0.0)
            standoff = z0;
        emit(out, nfsar::make_raster_trajectory(to_cpp(deref(aperture, "aperture")), deref(radar, "radar").v,
                                                standoff));
    });
}

nfsar_status nfsar_trajectory_freehand(const nfsar_aperture *aperture, const nfsar_radar *radar,
                                       const nfsar_jitter *jitter, uint64_t seed, double z0, nfsar_trajectory **out)
{
    return guarded([&] {
        const auto &j = deref(jitter, "jitter");
        std::optional<double> standoff;
        if (z0 > 0.0)
            standoff = z0;
        emit(out, nfsar::make_freehand_trajectory(to_cpp(deref(aperture, "aperture")), deref(radar, "radar").v,
                                                  {j.sigma_xy, j.z_span, j.smoothness}, seed, standoff));
    });
}

nfsar_status nfsar_trajectory_perturb(const nfsar_trajectory *t, double sigma_x, double sigma_y, double sigma_z,
                                      uint64_t seed, nfsar_trajectory **out)
{
    return guarded([&] {
        emit(out, nfsar::perturb_trajectory(deref(t, "trajectory").v,
                                            nfsar::PerturbationSpec{{sigma_x, sigma_y, sigma_z}, seed}));
    });
}

nfsar_status nfsar_trajectory_load(const char *path, nfsar_trajectory **out)
{
    return guarded([&] { emit(out, nfsar::load_trajectory(check_str(path, "path"))); });
}

nfsar_status nfsar_trajectory_save(const nfsar_trajectory *t, const char *path)
{
    return guarded([&] { nfsar::save_trajectory(check_str(path, "path"), deref(t, "trajectory").v); });
}

nfsar_status nfsar_trajectory_to_json(const nfsar_trajectory *t, char **out)
{
    return guarded([&] {
        check_out(out);
        *out = dup_string(nfsar::trajectory_to_json(deref(t, "trajectory").v));
    });
}

nfsar_status nfsar_trajectory_counts(const nfsar_trajectory *t, size_t *n_poses, size_t *n_tx, size_t *n_rx)
{
    return guarded([&] {
        const auto &traj = deref(t, "trajectory").v;
        if (n_poses)
            *n_poses = traj.n_poses();
        if (n_tx)
            *n_tx = traj.n_tx();
        if (n_rx)
            *n_rx = traj.n_rx();
    });
}

nfsar_status nfsar_trajectory_poses(const nfsar_trajectory *t, double *xyz, size_t capacity)
{
    return guarded([&] {
        const auto &traj = deref(t, "trajectory").v;
        check_out(xyz);
        check_capacity(capacity, 3 * traj.n_poses());
        for (std::size_t i = 0; i < traj.n_poses(); ++i)
        {
            xyz[3 * i] = traj.poses[i].x;
            xyz[3 * i + 1] = traj.poses[i].y;
            xyz[3 * i + 2] = traj.poses[i].z;
        }
    });
}

nfsar_status nfsar_trajectory_z0(const nfsar_trajectory *t, double *out)
{
    return guarded([&] {
        check_out(out);
        const auto &traj = deref(t, "trajectory").v;
        if (!traj.z0)
            nfsar::fail(nfsar::ErrorCode::invalid_state, "trajectory has no Z0");
        *out = *traj.z0;
    });
}

nfsar_status nfsar_trajectory_virtual_elements(const nfsar_trajectory *t, nfsar_virtual_element *out,
                                               size_t capacity)
{
    return guarded([&] {
        const auto elems = nfsar::virtual_elements(deref(t, "trajectory").v);
        check_out(out);
        check_capacity(capacity, elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i)
            out[i] = {elems[i].position.x, elems[i].position.y, elems[i].position.z,
                      elems[i].dx, elems[i].dy, elems[i].dz};
    });
}

void nfsar_trajectory_free(nfsar_trajectory *t)
{
    delete t;
}

nfsar_status nfsar_beta(double d_x, double d_y, double d_z, double z0, double *out)
{
    return guarded([&] {
        check_out(out);
        *out = nfsar::beta(d_x, d_y, d_z, z0);
    });
}

// ---- scenes ----------------------------------------------------------------------------

nfsar_status nfsar_scene_create(double target_plane_z, nfsar_scene **out)
{
    return guarded([&] {
        nfsar::Scene s;
        s.target_plane_z = target_plane_z;
        emit(out, std::move(s));
    });
}

nfsar_status nfsar_scene_random(const nfsar_profile *p, uint64_t seed, nfsar_scene **out)
{
    return guarded([&] { emit(out, nfsar::random_scene(deref(p, "profile").v.scene, seed)); });
}

nfsar_status nfsar_scene_add_point(nfsar_scene *s, double x, double y, double z, double amplitude)
{
    return guarded([&] {
        auto &scene = deref(s, "scene").v;
        scene.points.push_back({{x, y, z}, amplitude});
        try
        {
            scene.validate();
        }
        catch (...)
        {
            scene.points.pop_back();
            throw;
        }
    });
}

namespace
{

void add_shape(nfsar_scene *s, nfsar::Shape shape)
{
    auto &scene = deref(s, "scene").v;
    scene.shapes.push_back(std::move(shape));
    try
    {
        scene.validate();
    }
    catch (...)
    {
        scene.shapes.pop_back();
        throw;
    }
}

} // namespace

nfsar_status nfsar_scene_add_rect(nfsar_scene *s, double cx, double cy, double width, double height, double angle,
                                  double amplitude)
{
    return guarded([&] { add_shape(s, {nfsar::RectShape{cx, cy, width, height, angle}, amplitude}); });
}

nfsar_status nfsar_scene_add_disk(nfsar_scene *s, double cx, double cy, double radius, double amplitude)
{
    return guarded([&] { add_shape(s, {nfsar::DiskShape{cx, cy, radius}, amplitude}); });
}

nfsar_status nfsar_scene_add_ring(nfsar_scene *s, double cx, double cy, double outer_radius, double inner_radius,
                                  double amplitude)
{
    return guarded([&] { add_shape(s, {nfsar::RingShape{cx, cy, outer_radius, inner_radius}, amplitude}); });
}

nfsar_status nfsar_scene_add_polygon(nfsar_scene *s, double cx, double cy, double circumradius, size_t sides,
                                     double angle, double hole_radius, double amplitude)
{
    return guarded([&] {
        add_shape(s, {nfsar::PolygonShape{cx, cy, circumradius, sides, angle, hole_radius}, amplitude});
    });
}

nfsar_status nfsar_scene_counts(const nfsar_scene *s, size_t *n_points, size_t *n_shapes)
{
    return guarded([&] {
        const auto &scene = deref(s, "scene").v;
        if (n_points)
            *n_points = scene.points.size();
        if (n_shapes)
            *n_shapes = scene.shapes.size();
    });
}

nfsar_status nfsar_scene_load(const char *path, nfsar_scene **out)
{
    return guarded([&] { emit(out, nfsar::load_scene(check_str(path, "path"))); });
}

nfsar_status nfsar_scene_save(const nfsar_scene *s, const char *path)
{
    return guarded([&] { nfsar::save_scene(check_str(path, "path"), deref(s, "scene").v); });
}

nfsar_status nfsar_scene_rasterize(const nfsar_scene *s, const nfsar_grid *grid, nfsar_image **out)
{
    return guarded([&] { emit(out, nfsar::rasterize_ideal(deref(s, "scene").v, to_cpp(deref(grid, "grid")))); });
}

nfsar_status nfsar_scene_scatterer_count(const nfsar_scene *s, const nfsar_grid *grid, size_t *out)
{
    return guarded([&] {
        check_out(out);
        *out = nfsar::discretize_scene(deref(s, "scene").v, to_cpp(deref(grid, "grid"))).size();
    });
}

void nfsar_scene_free(nfsar_scene *s)
{
    delete s;
}

// ---- raw data --------------------------------------------------------------------------

nfsar_status nfsar_synthesize(const nfsar_scene *s, const nfsar_grid *grid, const nfsar_trajectory *t,
                              const nfsar_radar *r, nfsar_raw **out)
{
    return guarded([&] {
        const auto pts = nfsar::discretize_scene(deref(s, "scene").v, to_cpp(deref(grid, "grid")));
        emit(out, nfsar::synthesize(pts, deref(t, "trajectory").v, deref(r, "radar").v));
    });
}

nfsar_status nfsar_synthesize_points(const double *xyza, size_t n, const nfsar_trajectory *t, const nfsar_radar *r,
                                     nfsar_raw **out)
{
    return guarded([&] {
        if (n > 0 && !xyza)
            nfsar::fail(nfsar::ErrorCode::invalid_argument, "scatterer array is NULL");
        std::vector<nfsar::PointScatterer> pts(n);
        for (std::size_t i = 0; i < n; ++i)
            pts[i] = {{xyza[4 * i], xyza[4 * i + 1], xyza[4 * i + 2]}, xyza[4 * i + 3]};
        emit(out, nfsar::synthesize(pts, deref(t, "trajectory").v, deref(r, "radar").v));
    });
}

nfsar_status nfsar_raw_add_noise(const nfsar_raw *raw, double snr_db, uint64_t seed, nfsar_raw **out)
{
    return guarded([&] { emit(out, nfsar::add_noise(deref(raw, "raw").v, snr_db, seed)); });
}

nfsar_status nfsar_raw_dims(const nfsar_raw *raw, size_t *n_meas, size_t *n_freq)
{
    return guarded([&] {
        const auto &r = deref(raw, "raw").v;
        if (n_meas)
            *n_meas = r.n_measurements();
        if (n_freq)
            *n_freq = r.n_freq();
    });
}

nfsar_status nfsar_raw_samples(const nfsar_raw *raw, double *re_im, size_t capacity)
{
    return guarded([&] { copy_complex(deref(raw, "raw").v.samples, re_im, capacity); });
}

nfsar_status nfsar_raw_save(const nfsar_raw *raw, const char *path, const char *trajectory_path,
                            const nfsar_radar *radar)
{
    return guarded([&] {
        nfsar::RawManifestRefs refs;
        if (trajectory_path)
            refs.trajectory = trajectory_path;
        if (radar)
            refs.radar = &radar->v;
        nfsar::save_raw(check_str(path, "path"), deref(raw, "raw").v, refs);
    });
}

nfsar_status nfsar_raw_load(const char *path, nfsar_raw **out)
{
    return guarded([&] { emit(out, nfsar::load_raw(check_str(path, "path"))); });
}

void nfsar_raw_free(nfsar_raw *raw)
{
    delete raw;
}

// ---- EMPM and reconstruction -----------------------------------------------------------

nfsar_status nfsar_empm_compensate(const nfsar_raw *raw, const nfsar_trajectory *t_est, double z0,
                                   nfsar_virtual **out)
{
    return guarded([&] { emit(out, nfsar::empm_compensate(deref(raw, "raw").v, deref(t_est, "trajectory").v, z0)); });
}

nfsar_status nfsar_virtual_info(const nfsar_virtual *v, size_t *nx, size_t *ny, size_t *n_freq, size_t *dropped)
{
    return guarded([&] {
        const auto &d = deref(v, "virtual data").v;
        if (nx)
            *nx = d.grid.nx;
        if (ny)
            *ny = d.grid.ny;
        if (n_freq)
            *n_freq = d.n_freq();
        if (dropped)
            *dropped = d.dropped;
    });
}

nfsar_status nfsar_virtual_samples(const nfsar_virtual *v, double *re_im, size_t capacity)
{
    return guarded([&] { copy_complex(deref(v, "virtual data").v.samples, re_im, capacity); });
}

nfsar_status nfsar_virtual_save(const nfsar_virtual *v, const char *path)
{
    return guarded([&] { nfsar::save_virtual(check_str(path, "path"), deref(v, "virtual data").v); });
}

nfsar_status nfsar_virtual_load(const char *path, nfsar_virtual **out)
{
    return guarded([&] { emit(out, nfsar::load_virtual(check_str(path, "path"))); });
}

void nfsar_virtual_free(nfsar_virtual *v)
{
    delete v;
}

nfsar_status nfsar_reconstruct(nfsar_algorithm algo, const nfsar_raw *raw, const nfsar_trajectory *t_est, double z0,
                               const nfsar_grid *grid, nfsar_image **out)
{
    return guarded([&] {
        emit(out, nfsar::reconstruct(to_cpp(algo), deref(raw, "raw").v, deref(t_est, "trajectory").v, z0,
                                     to_cpp(deref(grid, "grid"))));
    });
}

nfsar_status nfsar_rma_virtual(const nfsar_virtual *v, double z0, const nfsar_grid *grid, nfsar_image **out)
{
    return guarded([&] { emit(out, nfsar::rma(deref(v, "virtual data").v, z0, to_cpp(deref(grid, "grid")))); });
}

// ---- images and metrics ----------------------------------------------------------------

nfsar_status nfsar_image_create(const nfsar_grid *grid, const double *pixels, nfsar_image **out)
{
    return guarded([&] {
        const auto g = to_cpp(deref(grid, "grid"));
        g.validate();
        auto img = nfsar::SarImage::zeros(g);
        if (pixels)
            img.pixels.assign(pixels, pixels + g.size());
        emit(out, std::move(img));
    });
}

nfsar_status nfsar_image_grid(const nfsar_image *img, nfsar_grid *out)
{
    return guarded([&] {
        check_out(out);
        *out = to_c(deref(img, "image").v.grid);
    });
}

nfsar_status nfsar_image_pixels(const nfsar_image *img, double *pixels, size_t capacity)
{
    return guarded([&] {
        const auto &v = deref(img, "image").v.pixels;
        check_out(pixels);
        check_capacity(capacity, v.size());
        std::copy(v.begin(), v.end(), pixels);
    });
}

nfsar_status nfsar_image_load(const char *path, nfsar_image **out)
{
    return guarded([&] { emit(out, nfsar::load_image(check_str(path, "path"))); });
}

nfsar_status nfsar_image_save(const nfsar_image *img, const char *path)
{
    return guarded([&] { nfsar::save_image(check_str(path, "path"), deref(img, "image").v); });
}

nfsar_status nfsar_image_save_png(const nfsar_image *img, const char *path)
{
    return guarded([&] { nfsar::save_image_png(check_str(path, "path"), deref(img, "image").v); });
}

void nfsar_image_free(nfsar_image *img)
{
    delete img;
}

nfsar_status nfsar_rmse(const nfsar_image *a, const nfsar_image *b, double *out)
{
    return guarded([&] {
        check_out(out);
        *out = nfsar::rmse(deref(a, "image a").v, deref(b, "image b").v);
    });
}

nfsar_status nfsar_psnr(const nfsar_image *a, const nfsar_image *b, double *out)
{
    return guarded([&] {
        check_out(out);
        *out = nfsar::psnr(deref(a, "image a").v, deref(b, "image b").v);
    });
}

nfsar_status nfsar_ncc(const nfsar_image *a, const nfsar_image *b, double *out)
{
    return guarded([&] {
        check_out(out);
        *out = nfsar::ncc(deref(a, "image a").v, deref(b, "image b").v);
    });
}

nfsar_status nfsar_argmax(const nfsar_image *img, size_t *ix, size_t *iy)
{
    return guarded([&] {
        const auto p = nfsar::argmax(deref(img, "image").v);
        if (ix)
            *ix = p.ix;
        if (iy)
            *iy = p.iy;
    });
}

nfsar_status nfsar_bench_reconstruct(nfsar_algorithm algo, const nfsar_raw *raw, const nfsar_trajectory *t_est,
                                     double z0, const nfsar_grid *grid, size_t repetitions, nfsar_bench_stats *out)
{
    return guarded([&] {
        check_out(out);
        const auto a = to_cpp(algo);
        const auto &r = deref(raw, "raw").v;
        const auto &t = deref(t_est, "trajectory").v;
        const auto g = to_cpp(deref(grid, "grid"));
        const auto stats = nfsar::bench([&] { (void)nfsar::reconstruct(a, r, t, z0, g); }, repetitions);
        *out = {stats.mean_s, stats.std_s, stats.min_s, stats.repetitions};
    });
}

nfsar_compare_spec nfsar_compare_spec_default(void)
{
    const nfsar::ComparisonSpec d;
    return {d.n_scenes, d.sigma, d.snr_db, d.z_span, d.repetitions, d.base_seed};
}

nfsar_status nfsar_compare(const nfsar_profile *p, const nfsar_compare_spec *spec, char **csv, char **json_lines)
{
    return guarded([&] {
        const auto &s = deref(spec, "spec");
        const auto result = nfsar::compare_algorithms(
            deref(p, "profile").v,
            nfsar::ComparisonSpec{s.n_scenes, s.sigma, s.snr_db, s.z_span, s.repetitions, s.base_seed});
        std::string c = nfsar::comparison_csv(result);
        std::string j = nfsar::comparison_json_lines(result);
        char *c_out = csv ? dup_string(c) : nullptr;
        if (json_lines)
        {
            try
            {
                *json_lines = dup_string(j);
            }
            catch (...)
            {
                std::free(c_out);
                throw;
            }
        }
        if (csv)
            *csv = c_out;
    });
}

nfsar_status nfsar_machine_descriptor(char **out)
{
    return guarded([&] {
        check_out(out);
        *out = dup_string(nfsar::machine_descriptor());
    });
}

// ---- datasets --------------------------------------------------------------------------

nfsar_status nfsar_dataset_generate(const nfsar_profile *p, uint64_t base_seed, const char *root,
                                    size_t checkpoint_every, nfsar_progress_fn progress, void *user)
{
    return guarded([&] {
        nfsar::ProgressFn fn;
        if (progress)
            fn = [&](const nfsar::DatasetProgress &d) {
                progress(d.split == nfsar::Split::train ? NFSAR_SPLIT_TRAIN : NFSAR_SPLIT_TEST, d.done, d.total, user);
            };
        nfsar::generate_dataset(deref(p, "profile").v, base_seed, check_str(root, "root"), fn,
                                checkpoint_every == 0 ? 16 : checkpoint_every);
    });
}

nfsar_status nfsar_dataset_verify(const char *root)
{
    return guarded([&] { nfsar::verify_dataset(check_str(root, "root")); });
}

nfsar_status nfsar_dataset_split_size(const char *root, nfsar_split split, size_t *out)
{
    return guarded([&] {
        check_out(out);
        *out = nfsar::load_manifest(check_str(root, "root")).entries(to_cpp(split)).size();
    });
}

uint64_t nfsar_sample_seed(uint64_t base_seed, nfsar_split split, size_t index)
{
    return nfsar::sample_seed(base_seed, split == NFSAR_SPLIT_TRAIN ? nfsar::Split::train : nfsar::Split::test,
                              index);
}

namespace
{

void export_sample(const nfsar::DatasetSample &s, nfsar_image **input, nfsar_image **target, char **meta_json)
{
    check_out(input);
    check_out(target);
    auto in = std::make_unique<nfsar_image>(nfsar_image{s.input});
    auto tg = std::make_unique<nfsar_image>(nfsar_image{s.target});
    if (meta_json)
        *meta_json = dup_string(sample_meta_json(s));
    *input = in.release();
    *target = tg.release();
}

} // namespace

nfsar_status nfsar_make_sample(const nfsar_profile *p, uint64_t seed, nfsar_image **input, nfsar_image **target,
                               char **meta_json)
{
    return guarded([&] { export_sample(nfsar::make_sample(deref(p, "profile").v, seed), input, target, meta_json); });
}

nfsar_status nfsar_sample_load(const char *path, nfsar_image **input, nfsar_image **target, char **meta_json)
{
    return guarded([&] { export_sample(nfsar::load_sample(check_str(path, "path")), input, target, meta_json); });
}

} // extern "C"
