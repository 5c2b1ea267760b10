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

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "nfsar/error.hpp"
#include "nfsar/parallel.hpp"
#include "nfsar/reconstruction.hpp"

namespace nfsar
{

namespace
{

// FFTW planning is not thread-safe; execution of an existing plan is.
std::mutex g_fftw_plan_mutex;

struct FftwFree
{
    void operator()(fftw_complex *p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct FftwPlan
{
    fftw_plan plan = nullptr;

    FftwPlan(int ny, int nx, fftw_complex *buf, int sign)
    {
        std::lock_guard lock(g_fftw_plan_mutex);
        plan = fftw_plan_dft_2d(ny, nx, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan)
            fail(ErrorCode::invalid_state, "rma: FFTW planning failed");
    }
    ~FftwPlan()
    {
        std::lock_guard lock(g_fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    FftwPlan(const FftwPlan &) = delete;
    FftwPlan &operator=(const FftwPlan &) = delete;

    void execute(fftw_complex *buf) const { fftw_execute_dft(plan, buf, buf); }
};

FftwBuffer allocate(std::size_t n)
{
    auto *p = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!p)
        throw std::bad_alloc();
    std::fill_n(reinterpret_cast<double *>(p), 2 * n, 0.0);
    return FftwBuffer(p);
}

// Signed FFT bin frequency, in cycles per sample.
double fft_freq(std::size_t i, std::size_t n)
{
    const auto si = static_cast<double>(i), sn = static_cast<double>(n);
    return (i < (n + 1) / 2 ? si : si - sn) / sn;
}

double wrap(double u, double period)
{
    u = std::fmod(u, period);
    return u < 0.0 ? u + period : u;
}

} // namespace

std::vector<double> rma_magnitude(const VirtualMonostaticData &virt, double z0, const GridSpec &grid)
{
    grid.validate();
    virt.grid.validate();
    require(z0 > 0.0, "rma: Z0 must be positive");
    require(!virt.freq_grid.empty(), "rma: empty frequency grid");
    require(virt.samples.size() == virt.grid.size() * virt.n_freq(), "rma: sample count does not match virtual grid");
    require(virt.grid.nx >= 2 && virt.grid.ny >= 2, "rma: virtual grid must be at least 2 x 2");

    const std::size_t nf = virt.n_freq();
    const std::size_t nxv = virt.grid.nx, nyv = virt.grid.ny;
    const std::size_t NX = 2 * nxv, NY = 2 * nyv; // zero-padding x2
    const std::size_t plane = NX * NY;

    std::vector<double> k(nf);
    for (std::size_t n = 0; n < nf; ++n)
        k[n] = 2.0 * std::numbers::pi * virt.freq_grid[n] / kSpeedOfLight;
    for (std::size_t n = 1; n < nf; ++n)
        require(k[n] > k[n - 1], "rma: frequency grid must be strictly increasing");

    // Spatial spectrum per frequency: cube[n][iy][ix].
    FftwBuffer cube = allocate(plane * nf);
    for (std::size_t iy = 0; iy < nyv; ++iy)
        for (std::size_t ix = 0; ix < nxv; ++ix)
        {
            const std::size_t cell = iy * nxv + ix;
            for (std::size_t n = 0; n < nf; ++n)
            {
                const cdouble s = virt.samples[cell * nf + n];
                fftw_complex &dst = cube[n * plane + iy * NX + ix];
                dst[0] = s.real();
                dst[1] = s.imag();
            }
        }
    {
        FftwPlan forward(static_cast<int>(NY), static_cast<int>(NX), cube.get(), FFTW_FORWARD);
        parallel_for(nf, [&](std::size_t b, std::size_t e) {
            for (std::size_t n = b; n < e; ++n)
                forward.execute(cube.get() + n * plane);
        });
    }

    std::vector<double> kx(NX), ky(NY);
    for (std::size_t i = 0; i < NX; ++i)
        kx[i] = 2.0 * std::numbers::pi * fft_freq(i, NX) / virt.grid.spacing_x;
    for (std::size_t j = 0; j < NY; ++j)
        ky[j] = 2.0 * std::numbers::pi * fft_freq(j, NY) / virt.grid.spacing_y;

    // Global uniform k_z grid: from the smallest propagating k_z to 2 k_max, with spacing 2 dk
    // (the k_z sample spacing at k_x = k_y = 0; off-axis the samples are sparser).
    const double kz_hi = 2.0 * k.back();
    double kz_lo = kz_hi;
    for (std::size_t j = 0; j < NY; ++j)
        for (std::size_t i = 0; i < NX; ++i)
        {
            const double kxy2 = kx[i] * kx[i] + ky[j] * ky[j];
            for (std::size_t n = 0; n < nf; ++n)
            {
                const double arg = 4.0 * k[n] * k[n] - kxy2;
                if (arg >= 0.0)
                {
                    kz_lo = std::min(kz_lo, std::sqrt(arg));
                    break;
                }
            }
        }
    const double dkz = nf > 1 ? 2.0 * (k.back() - k.front()) / static_cast<double>(nf - 1) : 0.0;
    const std::size_t n_kz = nf > 1 ? static_cast<std::size_t>(std::floor((kz_hi - kz_lo) / dkz)) + 1 : 1;

    FftwBuffer focused = allocate(plane);
    parallel_for(NY, [&](std::size_t jb, std::size_t je) {
        std::vector<double> kz(nf), lr(nf), li(nf);
        for (std::size_t j = jb; j < je; ++j)
            for (std::size_t i = 0; i < NX; ++i)
            {
                const double kxy2 = kx[i] * kx[i] + ky[j] * ky[j];
                std::size_t first = nf;
                for (std::size_t n = 0; n < nf; ++n)
                {
                    const double arg = 4.0 * k[n] * k[n] - kxy2;
                    if (arg < 0.0)
                        continue; // evanescent
                    if (first == nf)
                        first = n;
                    kz[n] = std::sqrt(arg);
                    const fftw_complex &s = cube[n * plane + j * NX + i];
                    const double pr = std::cos(kz[n] * z0), pi = std::sin(kz[n] * z0);
                    lr[n] = s[0] * pr - s[1] * pi;
                    li[n] = s[0] * pi + s[1] * pr;
                }
                double acc_r = 0.0, acc_i = 0.0;
                if (first < nf && nf == 1)
                {
                    acc_r = lr[0];
                    acc_i = li[0];
                }
                else if (first < nf)
                {
                    // Stolt: linear interpolation of the (monotone) k_z samples onto the uniform grid.
                    std::size_t seg = first;
                    const double lo = kz[first], hi = kz[nf - 1];
                    const auto m_begin = static_cast<std::size_t>(std::max(0.0, std::ceil((lo - kz_lo) / dkz)));
                    for (std::size_t m = m_begin; m < n_kz; ++m)
                    {
                        const double q = kz_lo + dkz * static_cast<double>(m);
                        if (q < lo)
                            continue;
                        if (q > hi)
                            break;
                        while (seg + 1 < nf - 1 && kz[seg + 1] < q)
                            ++seg;
                        if (seg + 1 >= nf)
                        {
                            acc_r += lr[seg];
                            acc_i += li[seg];
                            continue;
                        }
                        const double t = (q - kz[seg]) / (kz[seg + 1] - kz[seg]);
                        acc_r += lr[seg] + t * (lr[seg + 1] - lr[seg]);
                        acc_i += li[seg] + t * (li[seg + 1] - li[seg]);
                    }
                }
                focused[j * NX + i][0] = acc_r;
                focused[j * NX + i][1] = acc_i;
            }
    });
    cube.reset();

    {
        FftwPlan backward(static_cast<int>(NY), static_cast<int>(NX), focused.get(), FFTW_BACKWARD);
        backward.execute(focused.get());
    }

    // Image sample (i, j) sits at (origin_x + i dx, origin_y + j dy), periodic in NX dx, NY dy.
    std::vector<double> mag(plane);
    for (std::size_t p = 0; p < plane; ++p)
        mag[p] = std::hypot(focused[p][0], focused[p][1]);

    std::vector<double> out(grid.size());
    const auto period_x = static_cast<double>(NX), period_y = static_cast<double>(NY);
    for (std::size_t iy = 0; iy < grid.ny; ++iy)
    {
        const double v = wrap((grid.y_at(iy) - virt.grid.origin_y) / virt.grid.spacing_y, period_y);
        const auto j0 = static_cast<std::size_t>(std::floor(v)) % NY;
        const std::size_t j1 = (j0 + 1) % NY;
        const double fy = v - std::floor(v);
        for (std::size_t ix = 0; ix < grid.nx; ++ix)
        {
            const double u = wrap((grid.x_at(ix) - virt.grid.origin_x) / virt.grid.spacing_x, period_x);
            const auto i0 = static_cast<std::size_t>(std::floor(u)) % NX;
            const std::size_t i1 = (i0 + 1) % NX;
            const double fx = u - std::floor(u);
            out[iy * grid.nx + ix] = (1.0 - fy) * ((1.0 - fx) * mag[j0 * NX + i0] + fx * mag[j0 * NX + i1]) +
                                     fy * ((1.0 - fx) * mag[j1 * NX + i0] + fx * mag[j1 * NX + i1]);
        }
    }
    return out;
}

SarImage rma(const VirtualMonostaticData &virt, double z0, const GridSpec &grid)
{
    SarImage img{grid, rma_magnitude(virt, z0, grid)};
    normalize_in_place(img.pixels);
    return img;
}

SarImage empm_rma(const RawData &raw, const FreehandTrajectory &traj_est, double z0, const GridSpec &grid)
{
    return rma(empm_compensate(raw, traj_est, z0), z0, grid);
}

const char *to_string(Algorithm algo) noexcept
{
    switch (algo)
    {
    case Algorithm::bpa:
        return "bpa";
    case Algorithm::rma:
        return "rma";
    case Algorithm::empm_rma:
        return "empm-rma";
    }
    return "unknown";
}

Algorithm algorithm_from_string(const std::string &s)
{
    for (const auto a : {Algorithm::bpa, Algorithm::rma, Algorithm::empm_rma})
        if (s == to_string(a))
            return a;
    fail(ErrorCode::invalid_argument, "unknown algorithm '" + s + "' (expected bpa, rma or empm-rma)");
}

SarImage reconstruct(Algorithm algo, const RawData &raw, const FreehandTrajectory &traj_est, double z0,
                     const GridSpec &grid)
{
    switch (algo)
    {
    case Algorithm::bpa:
        return bpa(raw, traj_est, grid);
    case Algorithm::rma:
        return rma(bin_to_grid(raw, traj_est, virtual_grid_for(traj_est)), z0, grid);
    case Algorithm::empm_rma:
        return empm_rma(raw, traj_est, z0, grid);
    }
    fail(ErrorCode::invalid_argument, "unknown algorithm");
}

} // namespace nfsar
