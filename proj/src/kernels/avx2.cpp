// SPDX-License-Identifier: Apache-2.0
// Built with -mavx2 -mfma. Only reached after a cpuid check.
#include "fbmc/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace fbmc::kernels::detail {
namespace {

// std::complex<double> is two packed doubles, so a __m256d holds two values.
inline const double* as_doubles(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cd* p) { return reinterpret_cast<double*>(p); }

void real_weighted_accumulate(cd* acc, const double* w, const cd* x, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // (w0, w0, w1, w1)
        const __m128d w01 = _mm_loadu_pd(w + i);
        const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w01), 0x50);
        const __m256d xv = _mm256_loadu_pd(as_doubles(x + i));
        const __m256d av = _mm256_loadu_pd(as_doubles(acc + i));
        _mm256_storeu_pd(as_doubles(acc + i), _mm256_fmadd_pd(ww, xv, av));
    }
    for (; i < n; ++i)
        acc[i] += w[i] * x[i];
}

void caxpy(cd* y, cd a, const cd* x, std::size_t n)
{
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(as_doubles(x + i));
        const __m256d xs = _mm256_permute_pd(xv, 0x5); // (im, re) pairs
        // re: ar*xr - ai*xi, im: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        const __m256d yv = _mm256_loadu_pd(as_doubles(y + i));
        _mm256_storeu_pd(as_doubles(y + i), _mm256_add_pd(yv, prod));
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

cd real_weighted_sum(const cd* x, const double* w, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d w03 = _mm256_loadu_pd(w + i);
        const __m256d wlo = _mm256_permute4x64_pd(w03, 0x50);
        const __m256d whi = _mm256_permute4x64_pd(w03, 0xFA);
        acc0 = _mm256_fmadd_pd(wlo, _mm256_loadu_pd(as_doubles(x + i)), acc0);
        acc1 = _mm256_fmadd_pd(whi, _mm256_loadu_pd(as_doubles(x + i + 2)), acc1);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d folded = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    double re = _mm_cvtsd_f64(folded);
    double im = _mm_cvtsd_f64(_mm_unpackhi_pd(folded, folded));
    for (; i < n; ++i) {
        re += w[i] * x[i].real();
        im += w[i] * x[i].imag();
    }
    return {re, im};
}

PowerStats power_stats(const cd* x, std::size_t n)
{
    __m256d sum = _mm256_setzero_pd();
    __m256d peak = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(as_doubles(x + i));     // r0 i0 r1 i1
        const __m256d b = _mm256_loadu_pd(as_doubles(x + i + 2)); // r2 i2 r3 i3
        const __m256d a2 = _mm256_mul_pd(a, a);
        const __m256d b2 = _mm256_mul_pd(b, b);
        const __m256d p = _mm256_hadd_pd(a2, b2); // p0 p2 p1 p3
        sum = _mm256_add_pd(sum, p);
        peak = _mm256_max_pd(peak, p);
    }
    alignas(32) double s[4], m[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(m, peak);
    PowerStats out;
    out.sum = (s[0] + s[1]) + (s[2] + s[3]);
    out.peak = std::max(std::max(m[0], m[1]), std::max(m[2], m[3]));
    for (; i < n; ++i) {
        const double p = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
        out.sum += p;
        out.peak = std::max(out.peak, p);
    }
    return out;
}

constexpr Table kAvx2{real_weighted_accumulate, caxpy, real_weighted_sum, power_stats};

} // namespace

const Table* avx2_table() { return &kAvx2; }

} // namespace fbmc::kernels::detail
