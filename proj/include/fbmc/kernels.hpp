// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>

#include "fbmc/common.hpp"

// Inner loops of the filter bank, channel and metrics code. Every kernel has
// a scalar reference and, where the CPU allows it, an AVX2 variant picked at
// first use. FBMC_ISA=scalar in the environment forces the reference path.
namespace fbmc::kernels {

enum class Isa { scalar, avx2 };

struct PowerStats {
    double sum = 0.0;  // sum of |x|^2
    double peak = 0.0; // max of |x|^2
};

struct Table {
    // acc[i] += w[i] * x[i]
    void (*real_weighted_accumulate)(cd* acc, const double* w, const cd* x, std::size_t n);
    // y[i] += a * x[i]
    void (*caxpy)(cd* y, cd a, const cd* x, std::size_t n);
    // sum x[i] * w[i], w real
    cd (*real_weighted_sum)(const cd* x, const double* w, std::size_t n);
    PowerStats (*power_stats)(const cd* x, std::size_t n);
};

const Table& table(Isa isa);
bool available(Isa isa);
std::string_view name(Isa isa);

Isa active_isa();
// Overrides the runtime choice. Throws InvalidArgument if the ISA is absent.
void select(Isa isa);

inline const Table& active() { return table(active_isa()); }

inline void real_weighted_accumulate(std::span<cd> acc, std::span<const double> w, std::span<const cd> x)
{
    if (w.size() != acc.size() || x.size() != acc.size())
        throw InvalidArgument("real_weighted_accumulate: length mismatch");
    active().real_weighted_accumulate(acc.data(), w.data(), x.data(), acc.size());
}

inline void caxpy(std::span<cd> y, cd a, std::span<const cd> x)
{
    if (x.size() != y.size())
        throw InvalidArgument("caxpy: length mismatch");
    active().caxpy(y.data(), a, x.data(), y.size());
}

inline cd real_weighted_sum(std::span<const cd> x, std::span<const double> w)
{
    if (x.size() != w.size())
        throw InvalidArgument("real_weighted_sum: length mismatch");
    return active().real_weighted_sum(x.data(), w.data(), x.size());
}

inline PowerStats power_stats(std::span<const cd> x) { return active().power_stats(x.data(), x.size()); }

namespace detail {
const Table& scalar_table();
const Table* avx2_table();
} // namespace detail

} // namespace fbmc::kernels
