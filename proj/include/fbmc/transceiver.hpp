// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fbmc/common.hpp"
#include "fbmc/lattice.hpp"
#include "fbmc/prototype.hpp"

namespace fbmc {

struct FrameLayout {
    int num_subcarriers = 0;
    int num_cols = 0;
    std::size_t filter_length = 0;

    // (N - 1) M / 2 + L
    std::size_t sample_count() const;
};

struct TimeSignal {
    std::vector<cd> samples;
    FrameLayout layout;

    std::size_t sample_count() const { return samples.size(); }
};

// y_{p,q}, same shape as the transmitted grid.
using AfbOutput = ComplexLattice;

// s(l) = sum_{m,n} d_{m,n} g_{m,n}(l), with g_{m,n} as in basis_sample().
// The IDFT form below is the default; it agrees with synthesize_direct()
// to rounding.
TimeSignal synthesize(const ComplexLattice& grid, const PrototypeFilter& g);
TimeSignal synthesize_direct(const ComplexLattice& grid, const PrototypeFilter& g);

// y_{p,q} = sum_l r(l) conj(g_{p,q}(l)), the adjoint of synthesize().
// Samples past the frame (channel tail) are ignored.
AfbOutput analyze(std::span<const cd> signal, const PrototypeFilter& g, int M, int N);
AfbOutput analyze_direct(std::span<const cd> signal, const PrototypeFilter& g, int M, int N);

// Debug dump: "index,re,im" per line.
void write_signal_csv(std::ostream& os, std::span<const cd> samples);

} // namespace fbmc
