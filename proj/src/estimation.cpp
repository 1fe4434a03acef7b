// SPDX-License-Identifier: Apache-2.0
#include "fbmc/estimation.hpp"

#include <cmath>

namespace fbmc {

CfrEstimate estimate_cfr(const AfbOutput& afb, const PseudoPilotVector& pilots, Scheme scheme)
{
    const int M = afb.subcarriers();
    if (afb.columns() <= kPilotColumn)
        throw InvalidArgument("estimate_cfr: AFB output has no pilot column");
    if (pilots.values.size() != static_cast<std::size_t>(M))
        throw InvalidArgument("estimate_cfr: pilot vector length " + std::to_string(pilots.values.size()) +
                              " does not match M = " + std::to_string(M));
    CfrEstimate out;
    out.scheme = scheme;
    out.values.resize(static_cast<std::size_t>(M));
    for (int p = 0; p < M; ++p) {
        const cd c = pilots.values[static_cast<std::size_t>(p)];
        if (std::abs(c) < 1e-12)
            throw DegeneratePilotError("estimate_cfr: pseudo-pilot at subcarrier " + std::to_string(p) +
                                       " is zero");
        out.values[static_cast<std::size_t>(p)] = afb(p, kPilotColumn) / c;
    }
    return out;
}

EqualizedLattice equalize(const AfbOutput& afb, std::span<const cd> cfr, int first_col)
{
    const int M = afb.subcarriers();
    if (cfr.size() != static_cast<std::size_t>(M))
        throw InvalidArgument("equalize: CFR length does not match M");
    if (first_col < 0 || first_col > afb.columns())
        throw InvalidArgument("equalize: first column out of range");
    const int cols = afb.columns() - first_col;
    EqualizedLattice out{RealLattice(M, cols), std::vector<bool>(static_cast<std::size_t>(M), false)};
    std::vector<cd> inv(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const cd h = cfr[static_cast<std::size_t>(m)];
        if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
            throw InvalidArgument("equalize: CFR is not finite at subcarrier " + std::to_string(m));
        if (std::abs(h) < 1e-9) {
            out.deep_fade[static_cast<std::size_t>(m)] = true;
            inv[static_cast<std::size_t>(m)] = 1.0;
        } else {
            inv[static_cast<std::size_t>(m)] = 1.0 / h;
        }
    }
    for (int n = 0; n < cols; ++n) {
        const auto src = afb.column(first_col + n);
        auto dst = out.values.column(n);
        for (std::size_t m = 0; m < static_cast<std::size_t>(M); ++m)
            dst[m] = (src[m] * inv[m]).real();
    }
    return out;
}

std::vector<std::uint8_t> oqam_demap(const RealLattice& eq, int M, int n_symbols)
{
    if (eq.subcarriers() != M || eq.columns() < 2 * n_symbols || n_symbols < 0)
        throw InvalidArgument("oqam_demap: lattice is " + std::to_string(eq.subcarriers()) + " x " +
                              std::to_string(eq.columns()) + ", need " + std::to_string(M) + " x " +
                              std::to_string(2 * n_symbols));
    const std::size_t count = static_cast<std::size_t>(M) * static_cast<std::size_t>(n_symbols);
    std::vector<std::uint8_t> bits(2 * count);
    for (std::size_t k = 0; k < count; ++k) {
        const int m = static_cast<int>(k % static_cast<std::size_t>(M));
        const int t = static_cast<int>(k / static_cast<std::size_t>(M));
        bits[2 * k] = eq(m, 2 * t) < 0.0 ? 1 : 0;
        bits[2 * k + 1] = eq(m, 2 * t + 1) < 0.0 ? 1 : 0;
    }
    return bits;
}

} // namespace fbmc
