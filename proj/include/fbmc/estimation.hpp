// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "fbmc/common.hpp"
#include "fbmc/lattice.hpp"
#include "fbmc/transceiver.hpp"

namespace fbmc {

struct CfrEstimate {
    std::vector<cd> values;
    Scheme scheme = Scheme::M_IAM;
};

// H_p = y_{p,1} / C_p. Throws DegeneratePilotError if any |C_p| < 1e-12.
CfrEstimate estimate_cfr(const AfbOutput& afb, const PseudoPilotVector& pilots, Scheme scheme);

struct EqualizedLattice {
    RealLattice values;          // payload columns only
    std::vector<bool> deep_fade; // |H_m| < 1e-9; cells passed through unscaled
};

// Re{ y_{m,n} / H_m } for columns first_col.. of afb.
EqualizedLattice equalize(const AfbOutput& afb, std::span<const cd> cfr, int first_col = kPreambleColumns);

// Hard decisions, inverse of qpsk_to_oqam. Negative -> 1, otherwise 0.
std::vector<std::uint8_t> oqam_demap(const RealLattice& eq, int M, int n_symbols);

} // namespace fbmc
