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

#ifndef NFSAR_NFSAR_H
#define NFSAR_NFSAR_H

/*
 * C interface of the nfsar library.
 *
 * Objects are opaque handles created by nfsar_*_create / load / generator functions and
 * released with the matching nfsar_*_free (which accepts NULL). Every fallible function
 * returns an nfsar_status; on failure nfsar_last_error() holds a message for the calling
 * thread until its next failing call. Strings returned through char** are allocated by
 * the library and must be released with nfsar_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NFSAR_BUILDING_LIBRARY)
#    define NFSAR_API __declspec(dllexport)
#  else
#    define NFSAR_API __declspec(dllimport)
#  endif
#else
#  define NFSAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nfsar_status
{
    NFSAR_OK = 0,
    NFSAR_ERR_INVALID_ARGUMENT = 1,
    NFSAR_ERR_INVALID_STATE = 2,
    NFSAR_ERR_SINGULAR_GEOMETRY = 3,
    NFSAR_ERR_GENERATION_FAILURE = 4,
    NFSAR_ERR_IO = 5,
    NFSAR_ERR_CORRUPT_DATA = 6,
    NFSAR_ERR_NUMERIC = 7,
    NFSAR_ERR_OUT_OF_MEMORY = 8,
    NFSAR_ERR_INTERNAL = 9
} nfsar_status;

typedef enum nfsar_algorithm
{
    NFSAR_ALGO_BPA = 0,
    NFSAR_ALGO_RMA = 1,      /* binning onto the virtual grid without phase compensation */
    NFSAR_ALGO_EMPM_RMA = 2
} nfsar_algorithm;

typedef enum nfsar_split
{
    NFSAR_SPLIT_TRAIN = 0,
    NFSAR_SPLIT_TEST = 1
} nfsar_split;

typedef struct nfsar_profile nfsar_profile;
typedef struct nfsar_radar nfsar_radar;
typedef struct nfsar_trajectory nfsar_trajectory;
typedef struct nfsar_scene nfsar_scene;
typedef struct nfsar_raw nfsar_raw;
typedef struct nfsar_virtual nfsar_virtual;
typedef struct nfsar_image nfsar_image;

typedef struct nfsar_aperture
{
    double width;
    double height;
    size_t nx;
    size_t ny;
    double z;
} nfsar_aperture;

typedef struct nfsar_grid
{
    size_t nx;
    size_t ny;
    double width;
    double height;
    double plane_z;
} nfsar_grid;

typedef struct nfsar_jitter
{
    double sigma_xy;
    double z_span;
    size_t smoothness;
} nfsar_jitter;

typedef struct nfsar_virtual_element
{
    double x, y, z;
    double dx, dy, dz;
} nfsar_virtual_element;

typedef struct nfsar_bench_stats
{
    double mean_s;
    double std_s;
    double min_s;
    size_t repetitions;
} nfsar_bench_stats;

typedef struct nfsar_compare_spec
{
    size_t n_scenes;
    double sigma; /* < 0 selects lambda_center / 8 */
    double snr_db;
    double z_span;
    size_t repetitions;
    uint64_t base_seed;
} nfsar_compare_spec;

typedef void (*nfsar_progress_fn)(nfsar_split split, size_t done, size_t total, void *user);

/* ---- library --------------------------------------------------------------------------- */

NFSAR_API const char *nfsar_version(void);
NFSAR_API const char *nfsar_last_error(void);
NFSAR_API const char *nfsar_status_string(nfsar_status status);
NFSAR_API void nfsar_string_free(char *s);
/* 0 restores the default (hardware concurrency). */
NFSAR_API void nfsar_set_threads(unsigned n);
NFSAR_API unsigned nfsar_get_threads(void);
NFSAR_API uint64_t nfsar_derive_seed(uint64_t base, uint32_t stream, uint64_t index);

/* ---- profiles -------------------------------------------------------------------------- */

/* name: "desk" or "paper" */
NFSAR_API nfsar_status nfsar_profile_create(const char *name, nfsar_profile **out);
NFSAR_API nfsar_status nfsar_profile_from_json(const char *json, nfsar_profile **out);
NFSAR_API nfsar_status nfsar_profile_to_json(const nfsar_profile *p, char **out);
NFSAR_API nfsar_status nfsar_profile_set_counts(nfsar_profile *p, size_t n_train, size_t n_test);
NFSAR_API nfsar_status nfsar_profile_radar(const nfsar_profile *p, nfsar_radar **out);
NFSAR_API nfsar_status nfsar_profile_aperture(const nfsar_profile *p, nfsar_aperture *out);
NFSAR_API nfsar_status nfsar_profile_grid(const nfsar_profile *p, nfsar_grid *out);
NFSAR_API nfsar_status nfsar_profile_z0(const nfsar_profile *p, double *out);
NFSAR_API void nfsar_profile_free(nfsar_profile *p);

/* ---- radar ----------------------------------------------------------------------------- */

NFSAR_API nfsar_status nfsar_radar_monostatic(double f_start, double f_stop, size_t n_freq, nfsar_radar **out);
NFSAR_API nfsar_status nfsar_radar_mimo_default(double f_start, double f_stop, size_t n_freq, nfsar_radar **out);
/* tx_xyz / rx_xyz hold n_tx / n_rx packed (x, y, z) offsets in meters. */
NFSAR_API nfsar_status nfsar_radar_create(double f_start, double f_stop, size_t n_freq, const double *tx_xyz,
                                          size_t n_tx, const double *rx_xyz, size_t n_rx, nfsar_radar **out);
NFSAR_API nfsar_status nfsar_radar_from_json(const char *json, nfsar_radar **out);
NFSAR_API nfsar_status nfsar_radar_to_json(const nfsar_radar *r, char **out);
NFSAR_API nfsar_status nfsar_radar_center_wavelength(const nfsar_radar *r, double *out);
NFSAR_API void nfsar_radar_free(nfsar_radar *r);

/* ---- trajectories ---------------------------------------------------------------------- */

/* z0 <= 0 leaves the standoff unset. */
NFSAR_API nfsar_status nfsar_trajectory_raster(const nfsar_aperture *aperture, const nfsar_radar *radar, double z0,
                                               nfsar_trajectory **out);
NFSAR_API nfsar_status nfsar_trajectory_freehand(const nfsar_aperture *aperture, const nfsar_radar *radar,
                                                 const nfsar_jitter *jitter, uint64_t seed, double z0,
                                                 nfsar_trajectory **out);
NFSAR_API nfsar_status nfsar_trajectory_perturb(const nfsar_trajectory *t, double sigma_x, double sigma_y,
                                                double sigma_z, uint64_t seed, nfsar_trajectory **out);
NFSAR_API nfsar_status nfsar_trajectory_load(const char *path, nfsar_trajectory **out);
NFSAR_API nfsar_status nfsar_trajectory_save(const nfsar_trajectory *t, const char *path);
NFSAR_API nfsar_status nfsar_trajectory_to_json(const nfsar_trajectory *t, char **out);
NFSAR_API nfsar_status nfsar_trajectory_counts(const nfsar_trajectory *t, size_t *n_poses, size_t *n_tx, size_t *n_rx);
/* xyz receives 3 * n_poses doubles. */
NFSAR_API nfsar_status nfsar_trajectory_poses(const nfsar_trajectory *t, double *xyz, size_t capacity);
/* Returns NFSAR_ERR_INVALID_STATE when the standoff is unset. */
NFSAR_API nfsar_status nfsar_trajectory_z0(const nfsar_trajectory *t, double *out);
NFSAR_API nfsar_status nfsar_trajectory_virtual_elements(const nfsar_trajectory *t, nfsar_virtual_element *out,
                                                         size_t capacity);
NFSAR_API void nfsar_trajectory_free(nfsar_trajectory *t);

NFSAR_API nfsar_status nfsar_beta(double d_x, double d_y, double d_z, double z0, double *out);

/* ---- scenes ---------------------------------------------------------------------------- */

NFSAR_API nfsar_status nfsar_scene_create(double target_plane_z, nfsar_scene **out);
NFSAR_API nfsar_status nfsar_scene_random(const nfsar_profile *p, uint64_t seed, nfsar_scene **out);
NFSAR_API nfsar_status nfsar_scene_add_point(nfsar_scene *s, double x, double y, double z, double amplitude);
NFSAR_API nfsar_status nfsar_scene_add_rect(nfsar_scene *s, double cx, double cy, double width, double height,
                                            double angle, double amplitude);
NFSAR_API nfsar_status nfsar_scene_add_disk(nfsar_scene *s, double cx, double cy, double radius, double amplitude);
NFSAR_API nfsar_status nfsar_scene_add_ring(nfsar_scene *s, double cx, double cy, double outer_radius,
                                            double inner_radius, double amplitude);
NFSAR_API nfsar_status nfsar_scene_add_polygon(nfsar_scene *s, double cx, double cy, double circumradius,
                                               size_t sides, double angle, double hole_radius, double amplitude);
NFSAR_API nfsar_status nfsar_scene_counts(const nfsar_scene *s, size_t *n_points, size_t *n_shapes);
NFSAR_API nfsar_status nfsar_scene_load(const char *path, nfsar_scene **out);
NFSAR_API nfsar_status nfsar_scene_save(const nfsar_scene *s, const char *path);
NFSAR_API nfsar_status nfsar_scene_rasterize(const nfsar_scene *s, const nfsar_grid *grid, nfsar_image **out);
/* Number of point scatterers the scene discretizes to on grid. */
NFSAR_API nfsar_status nfsar_scene_scatterer_count(const nfsar_scene *s, const nfsar_grid *grid, size_t *out);
NFSAR_API void nfsar_scene_free(nfsar_scene *s);

/* ---- raw data -------------------------------------------------------------------------- */

/* Discretizes the scene on grid and synthesizes over the (true) trajectory. */
NFSAR_API nfsar_status nfsar_synthesize(const nfsar_scene *s, const nfsar_grid *grid, const nfsar_trajectory *t,
                                        const nfsar_radar *r, nfsar_raw **out);
/* xyza holds n packed (x, y, z, amplitude) scatterers. */
NFSAR_API nfsar_status nfsar_synthesize_points(const double *xyza, size_t n, const nfsar_trajectory *t,
                                               const nfsar_radar *r, nfsar_raw **out);
NFSAR_API nfsar_status nfsar_raw_add_noise(const nfsar_raw *raw, double snr_db, uint64_t seed, nfsar_raw **out);
NFSAR_API nfsar_status nfsar_raw_dims(const nfsar_raw *raw, size_t *n_meas, size_t *n_freq);
/* re_im receives 2 * n_meas * n_freq doubles, measurement-major. */
NFSAR_API nfsar_status nfsar_raw_samples(const nfsar_raw *raw, double *re_im, size_t capacity);
/* trajectory_path and radar may be NULL; they are only referenced from the manifest. */
NFSAR_API nfsar_status nfsar_raw_save(const nfsar_raw *raw, const char *path, const char *trajectory_path,
                                      const nfsar_radar *radar);
NFSAR_API nfsar_status nfsar_raw_load(const char *path, nfsar_raw **out);
NFSAR_API void nfsar_raw_free(nfsar_raw *raw);

/* ---- EMPM and reconstruction ----------------------------------------------------------- */

NFSAR_API nfsar_status nfsar_empm_compensate(const nfsar_raw *raw, const nfsar_trajectory *t_est, double z0,
                                             nfsar_virtual **out);
NFSAR_API nfsar_status nfsar_virtual_info(const nfsar_virtual *v, size_t *nx, size_t *ny, size_t *n_freq,
                                          size_t *dropped);
NFSAR_API nfsar_status nfsar_virtual_samples(const nfsar_virtual *v, double *re_im, size_t capacity);
NFSAR_API nfsar_status nfsar_virtual_save(const nfsar_virtual *v, const char *path);
NFSAR_API nfsar_status nfsar_virtual_load(const char *path, nfsar_virtual **out);
NFSAR_API void nfsar_virtual_free(nfsar_virtual *v);

NFSAR_API nfsar_status nfsar_reconstruct(nfsar_algorithm algo, const nfsar_raw *raw, const nfsar_trajectory *t_est,
                                         double z0, const nfsar_grid *grid, nfsar_image **out);
NFSAR_API nfsar_status nfsar_rma_virtual(const nfsar_virtual *v, double z0, const nfsar_grid *grid,
                                         nfsar_image **out);

/* ---- images and metrics ---------------------------------------------------------------- */

NFSAR_API nfsar_status nfsar_image_create(const nfsar_grid *grid, const double *pixels, nfsar_image **out);
NFSAR_API nfsar_status nfsar_image_grid(const nfsar_image *img, nfsar_grid *out);
NFSAR_API nfsar_status nfsar_image_pixels(const nfsar_image *img, double *pixels, size_t capacity);
NFSAR_API nfsar_status nfsar_image_load(const char *path, nfsar_image **out);
NFSAR_API nfsar_status nfsar_image_save(const nfsar_image *img, const char *path);
NFSAR_API nfsar_status nfsar_image_save_png(const nfsar_image *img, const char *path);
NFSAR_API void nfsar_image_free(nfsar_image *img);

NFSAR_API nfsar_status nfsar_rmse(const nfsar_image *a, const nfsar_image *b, double *out);
NFSAR_API nfsar_status nfsar_psnr(const nfsar_image *a, const nfsar_image *b, double *out);
NFSAR_API nfsar_status nfsar_ncc(const nfsar_image *a, const nfsar_image *b, double *out);
NFSAR_API nfsar_status nfsar_argmax(const nfsar_image *img, size_t *ix, size_t *iy);

/* Times nfsar_reconstruct(algo, ...) with one untimed warm-up run. */
NFSAR_API nfsar_status nfsar_bench_reconstruct(nfsar_algorithm algo, const nfsar_raw *raw,
                                               const nfsar_trajectory *t_est, double z0, const nfsar_grid *grid,
                                               size_t repetitions, nfsar_bench_stats *out);
NFSAR_API nfsar_compare_spec nfsar_compare_spec_default(void);
/* csv and json_lines may be NULL. */
NFSAR_API nfsar_status nfsar_compare(const nfsar_profile *p, const nfsar_compare_spec *spec, char **csv,
                                     char **json_lines);
NFSAR_API nfsar_status nfsar_machine_descriptor(char **out);

/* ---- datasets -------------------------------------------------------------------------- */

NFSAR_API nfsar_status nfsar_dataset_generate(const nfsar_profile *p, uint64_t base_seed, const char *root,
                                              size_t checkpoint_every, nfsar_progress_fn progress, void *user);
NFSAR_API nfsar_status nfsar_dataset_verify(const char *root);
NFSAR_API nfsar_status nfsar_dataset_split_size(const char *root, nfsar_split split, size_t *out);
NFSAR_API uint64_t nfsar_sample_seed(uint64_t base_seed, nfsar_split split, size_t index);
/* Runs the sample pipeline for one seed. meta_json may be NULL. */
NFSAR_API nfsar_status nfsar_make_sample(const nfsar_profile *p, uint64_t seed, nfsar_image **input,
                                         nfsar_image **target, char **meta_json);
NFSAR_API nfsar_status nfsar_sample_load(const char *path, nfsar_image **input, nfsar_image **target,
                                         char **meta_json);

#ifdef __cplusplus
}
#endif

#endif
