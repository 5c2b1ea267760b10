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

/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "nfsar/nfsar.h"

static int failures = 0;

#define CHECK(cond)                                                                 \
    do                                                                              \
    {                                                                               \
        if (!(cond))                                                                \
        {                                                                           \
            fprintf(stderr, "%s:%d: CHECK(%s) failed [%s]\n", __FILE__, __LINE__, #cond, \
                    nfsar_last_error());                                            \
            ++failures;                                                             \
        }                                                                           \
    } while (0)

#define CHECK_OK(expr) CHECK((expr) == NFSAR_OK)

static char *read_all(const char *path)
{
    FILE *f = fopen(path, "rb");
    if (!f)
        return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    fseek(f, 0, SEEK_SET);
    char *buf = malloc((size_t)n + 1);
    if (fread(buf, 1, (size_t)n, f) != (size_t)n)
        n = 0;
    buf[n] = '\0';
    fclose(f);
    return buf;
}

static void test_errors(void)
{
    nfsar_profile *p = NULL;
    CHECK(nfsar_profile_create("nope", &p) == NFSAR_ERR_INVALID_ARGUMENT);
    CHECK(p == NULL);
    CHECK(strstr(nfsar_last_error(), "nope") != NULL);
    CHECK(nfsar_profile_create("desk", NULL) == NFSAR_ERR_INVALID_ARGUMENT);
    CHECK(nfsar_profile_create(NULL, &p) == NFSAR_ERR_INVALID_ARGUMENT);
    CHECK(strcmp(nfsar_status_string(NFSAR_ERR_CORRUPT_DATA), "corrupt-data") == 0);

    double b = 0.0;
    CHECK(nfsar_beta(0.0, 0.0, 0.0, 0.0, &b) == NFSAR_ERR_INVALID_ARGUMENT);
    CHECK_OK(nfsar_beta(0.02, 0.0, 0.01, 0.3, &b));
    CHECK(fabs(b - 0.02033333333333333) < 1e-12);

    nfsar_image *img = NULL;
    CHECK(nfsar_image_load("/nonexistent/x.nfsi", &img) == NFSAR_ERR_IO);
    CHECK(img == NULL);

    /* Free functions accept NULL. */
    nfsar_profile_free(NULL);
    nfsar_image_free(NULL);
    nfsar_string_free(NULL);

    CHECK(nfsar_derive_seed(1, 2, 3) == nfsar_derive_seed(1, 2, 3));
    CHECK(nfsar_derive_seed(1, 2, 3) != nfsar_derive_seed(1, 2, 4));
    CHECK(strlen(nfsar_version()) > 0);
}

static void test_pipeline(const char *tmp)
{
    nfsar_radar *radar = NULL;
    CHECK_OK(nfsar_radar_monostatic(77e9, 81e9, 32, &radar));
    const nfsar_aperture ap = {0.064, 0.064, 32, 32, 0.0};
    nfsar_trajectory *t = NULL;
    CHECK_OK(nfsar_trajectory_raster(&ap, radar, 0.3, &t));
    size_t np = 0, ntx = 0, nrx = 0;
    CHECK_OK(nfsar_trajectory_counts(t, &np, &ntx, &nrx));
    CHECK(np == 1024 && ntx == 1 && nrx == 1);
    double z0 = 0.0;
    CHECK_OK(nfsar_trajectory_z0(t, &z0));
    CHECK(z0 == 0.3);

    const nfsar_grid grid = {32, 32, 0.064, 0.064, 0.3};
    /* Pixel (20, 9) center. */
    const double pw = 0.064 / 32.0;
    const double xyza[4] = {-0.032 + 20.5 * pw, -0.032 + 9.5 * pw, 0.3, 1.0};
    nfsar_raw *raw = NULL;
    CHECK_OK(nfsar_synthesize_points(xyza, 1, t, radar, &raw));
    size_t nm = 0, nf = 0;
    CHECK_OK(nfsar_raw_dims(raw, &nm, &nf));
    CHECK(nm == 1024 && nf == 32);
    double small[4];
    CHECK(nfsar_raw_samples(raw, small, 4) == NFSAR_ERR_INVALID_ARGUMENT);

    nfsar_virtual *v = NULL;
    CHECK_OK(nfsar_empm_compensate(raw, t, 0.3, &v));
    size_t vx = 0, vy = 0, vf = 0, dropped = 1;
    CHECK_OK(nfsar_virtual_info(v, &vx, &vy, &vf, &dropped));
    CHECK(vx == 32 && vy == 32 && vf == 32 && dropped == 0);

    nfsar_image *a = NULL, *b = NULL, *c = NULL;
    CHECK_OK(nfsar_reconstruct(NFSAR_ALGO_BPA, raw, t, 0.3, &grid, &a));
    CHECK_OK(nfsar_reconstruct(NFSAR_ALGO_EMPM_RMA, raw, t, 0.3, &grid, &b));
    CHECK_OK(nfsar_rma_virtual(v, 0.3, &grid, &c));
    size_t ix = 0, iy = 0;
    CHECK_OK(nfsar_argmax(a, &ix, &iy));
    CHECK(ix == 20 && iy == 9);
    double n = 0.0, r = 1.0;
    CHECK_OK(nfsar_ncc(a, b, &n));
    CHECK(n >= 0.9);
    CHECK_OK(nfsar_rmse(b, c, &r));
    CHECK(r == 0.0);

    char path[512];
    snprintf(path, sizeof path, "%s/a.nfsi", tmp);
    CHECK_OK(nfsar_image_save(a, path));
    nfsar_image *back = NULL;
    CHECK_OK(nfsar_image_load(path, &back));
    double psnr = 0.0;
    CHECK_OK(nfsar_psnr(a, back, &psnr));
    CHECK(psnr == 100.0); /* f32 rounding is far below the cap */

    nfsar_bench_stats st;
    CHECK_OK(nfsar_bench_reconstruct(NFSAR_ALGO_EMPM_RMA, raw, t, 0.3, &grid, 2, &st));
    CHECK(st.repetitions == 2 && st.min_s <= st.mean_s && st.std_s >= 0.0);

    nfsar_image_free(back);
    nfsar_image_free(a);
    nfsar_image_free(b);
    nfsar_image_free(c);
    nfsar_virtual_free(v);
    nfsar_raw_free(raw);
    nfsar_trajectory_free(t);
    nfsar_radar_free(radar);
}

static void test_scene(void)
{
    nfsar_scene *s = NULL;
    CHECK_OK(nfsar_scene_create(0.3, &s));
    CHECK_OK(nfsar_scene_add_disk(s, 0.0, 0.0, 0.02, 1.0));
    CHECK(nfsar_scene_add_ring(s, 0.0, 0.0, 0.01, 0.02, 1.0) == NFSAR_ERR_INVALID_ARGUMENT);
    CHECK(nfsar_scene_add_polygon(s, 0.0, 0.0, 0.01, 2, 0.0, 0.0, 1.0) == NFSAR_ERR_INVALID_ARGUMENT);
    size_t np = 9, ns = 9;
    CHECK_OK(nfsar_scene_counts(s, &np, &ns));
    CHECK(np == 0 && ns == 1); /* rejected shapes are rolled back */

    const nfsar_grid grid = {64, 64, 0.2, 0.2, 0.3};
    nfsar_image *img = NULL;
    CHECK_OK(nfsar_scene_rasterize(s, &grid, &img));
    double *px = malloc(sizeof(double) * 64 * 64);
    CHECK_OK(nfsar_image_pixels(img, px, 64 * 64));
    size_t filled = 0;
    for (size_t i = 0; i < 64 * 64; ++i)
        filled += px[i] == 1.0;
    size_t count = 0;
    CHECK_OK(nfsar_scene_scatterer_count(s, &grid, &count));
    CHECK(count == filled);
    free(px);
    nfsar_image_free(img);
    nfsar_scene_free(s);
}

static size_t progress_calls = 0;
static void on_progress(nfsar_split split, size_t done, size_t total, void *user)
{
    (void)split;
    (void)user;
    CHECK(done <= total);
    ++progress_calls;
}

static void test_dataset(const char *tmp, const char *profile_path)
{
    char *json = read_all(profile_path);
    CHECK(json != NULL);
    nfsar_profile *p = NULL;
    CHECK_OK(nfsar_profile_from_json(json, &p));
    free(json);
    CHECK_OK(nfsar_profile_set_counts(p, 2, 1));

    char root[512];
    snprintf(root, sizeof root, "%s/ds", tmp);
    CHECK_OK(nfsar_dataset_generate(p, 21, root, 1, on_progress, NULL));
    CHECK(progress_calls == 3);
    CHECK_OK(nfsar_dataset_verify(root));
    size_t n = 0;
    CHECK_OK(nfsar_dataset_split_size(root, NFSAR_SPLIT_TRAIN, &n));
    CHECK(n == 2);

    char path[600];
    snprintf(path, sizeof path, "%s/train/sample_000001.bin", root);
    nfsar_image *in = NULL, *tg = NULL, *in2 = NULL, *tg2 = NULL;
    char *meta = NULL;
    CHECK_OK(nfsar_sample_load(path, &in, &tg, &meta));
    CHECK(meta != NULL && strstr(meta, "\"seed\"") != NULL);
    CHECK_OK(nfsar_make_sample(p, nfsar_sample_seed(21, NFSAR_SPLIT_TRAIN, 1), &in2, &tg2, NULL));
    double r = 1.0;
    CHECK_OK(nfsar_rmse(in, in2, &r));
    CHECK(r < 1e-6); /* f32 storage */
    CHECK_OK(nfsar_rmse(tg, tg2, &r));
    CHECK(r < 1e-6);

    /* A different base seed in the same directory is refused. */
    CHECK(nfsar_dataset_generate(p, 22, root, 1, NULL, NULL) == NFSAR_ERR_INVALID_STATE);

    nfsar_string_free(meta);
    nfsar_image_free(in);
    nfsar_image_free(tg);
    nfsar_image_free(in2);
    nfsar_image_free(tg2);
    nfsar_profile_free(p);
}

int main(int argc, char **argv)
{
    if (argc < 3)
    {
        fprintf(stderr, "usage: %s TMPDIR PROFILE_JSON\n", argv[0]);
        return 2;
    }
    nfsar_set_threads(2);
    CHECK(nfsar_get_threads() == 2);
    test_errors();
    test_scene();
    test_pipeline(argv[1]);
    test_dataset(argv[1], argv[2]);
    if (failures)
    {
        fprintf(stderr, "%d check(s) failed\n", failures);
        return 1;
    }
    printf("capi: all checks passed\n");
    return 0;
}
