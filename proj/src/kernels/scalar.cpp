// SPDX-License-Identifier: Apache-2.0
#include "fbmc/kernels.hpp"

#include <algorithm>

namespace fbmc::kernels::detail {
namespace {

void real_weighted_accumulate(cd* acc, const double* w, const cd* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        acc[i] += w[i] * x[i];
}

void caxpy(cd* y, cd a, const cd* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

cd real_weighted_sum(const cd* x, const double* w, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += w[i] * x[i].real();
        im += w[i] * x[i].imag();
    }
    return {re, im};
}

PowerStats power_stats(const cd* x, std::size_t n)
{
    PowerStats s;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
        s.sum += p;
        s.peak = std::max(s.peak, p);
    }
    return s;
}

constexpr Table kScalar{real_weighted_accumulate, caxpy, real_weighted_sum, power_stats};

} // namespace

const Table& scalar_table() { return kScalar; }

} // namespace fbmc::kernels::detail
