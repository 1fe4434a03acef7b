// SPDX-License-Identifier: Apache-2.0
#include "fbmc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace fbmc::kernels {

namespace detail {
#ifndef FBMC_HAVE_AVX2
const Table* avx2_table() { return nullptr; }
#endif
} // namespace detail

namespace {

bool cpu_has_avx2()
{
#if defined(FBMC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa initial_choice()
{
    if (const char* env = std::getenv("FBMC_ISA")) {
        const std::string v(env);
        if (v == "scalar")
            return Isa::scalar;
        if (v == "avx2" && available(Isa::avx2))
            return Isa::avx2;
    }
    return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& current()
{
    static std::atomic<int> isa{static_cast<int>(initial_choice())};
    return isa;
}

} // namespace

bool available(Isa isa)
{
    if (isa == Isa::scalar)
        return true;
    static const bool avx2 = detail::avx2_table() != nullptr && cpu_has_avx2();
    return avx2;
}

const Table& table(Isa isa)
{
    if (!available(isa))
        throw InvalidArgument("kernels: ISA " + std::string(name(isa)) + " is not available on this machine");
    return isa == Isa::avx2 ? *detail::avx2_table() : detail::scalar_table();
}

std::string_view name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa active_isa() { return static_cast<Isa>(current().load(std::memory_order_relaxed)); }

void select(Isa isa)
{
    if (!available(isa))
        throw InvalidArgument("kernels: ISA " + std::string(name(isa)) + " is not available on this machine");
    current().store(static_cast<int>(isa), std::memory_order_relaxed);
}

} // namespace fbmc::kernels
