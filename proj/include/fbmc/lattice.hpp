// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fbmc/common.hpp"
#include "fbmc/prototype.hpp"

namespace fbmc {

enum class Scheme { IAM_C, E_IAM_C, NPS, M_IAM };

inline constexpr Scheme kAllSchemes[] = {Scheme::IAM_C, Scheme::E_IAM_C, Scheme::NPS, Scheme::M_IAM};

// "IAM-C", "E-IAM-C", "NPS", "M-IAM"
std::string_view to_string(Scheme s);
// Accepts the display names and the enum spellings, case-insensitive.
Scheme parse_scheme(std::string_view name);

inline constexpr int kPreambleColumns = 3;
inline constexpr int kPilotColumn = 1;

// QPSK component amplitude: unit-energy complex symbols.
inline const double kComponentAmplitude = 0.70710678118654752440;

struct PreambleSpec {
    Scheme scheme = Scheme::M_IAM;
    double pilot_amplitude = kComponentAmplitude;
};

// M x N grid: preamble in columns 0..2, real payload from column 3 on.
struct FrameGrid {
    ComplexLattice symbols;

    int num_subcarriers() const { return symbols.subcarriers(); }
    int num_cols() const { return symbols.columns(); }
};

struct PseudoPilotVector {
    std::vector<cd> values;

    std::vector<double> magnitude() const;
};

// Gray QPSK with bit 0 -> +a, bit 1 -> -a per component; a = 1/sqrt(2).
// Symbol k sits on subcarrier k % M at time index k / M. Its in-phase part
// goes to half-symbol column 2t, its quadrature part to 2t+1.
// Requires bits.size() == 2 * M * n_symbols.
RealLattice qpsk_to_oqam(std::span<const std::uint8_t> bits, int M, int n_symbols);

// 3-column preamble. Requires M divisible by 4 (all layouts have period 4
// in the subcarrier index). The magnitude of every interior pseudo-pilot
// (1 <= p <= M-2) is checked against expected_magnitude(); a mismatch
// throws ConsistencyError.
ComplexLattice build_preamble(const PreambleSpec& spec, int M, const InterferenceWeightTable& w);

// Preamble followed by the payload columns.
FrameGrid assemble_frame(const ComplexLattice& preamble, const RealLattice& payload);

// C_p = d_{p,1} + j sum over the first-order neighbourhood of the pilot
// column. Subcarriers wrap modulo M; a neighbour reached across the wrap
// enters with a minus sign, because the basis satisfies g_{m+M} = -g_m for
// an even filter length. Requires M divisible by 4.
PseudoPilotVector compute_pseudo_pilots(const ComplexLattice& preamble, const InterferenceWeightTable& w);

enum class Parity { even, odd };

// The table closed forms, per scheme and subcarrier parity. For M-IAM the
// odd entry is the positive-pilot (fully populated) subcarrier.
double magnitude_closed_form(Scheme s, Parity parity, double d, const InterferenceWeightTable& w);

// Closed-form |C_p| of the layout build_preamble() actually produces at an
// interior subcarrier p (not 0 or M-1, where the wrap twist changes the
// neighbourhood). Differs from magnitude_closed_form() for the M-IAM
// negative odd pilots and for the NPS odd subcarriers (see README).
double expected_magnitude(Scheme s, int p, double d, const InterferenceWeightTable& w);

// Sum of |cell|^2 over the grid.
double grid_power(const ComplexLattice& grid);

// Debug dump: one row per subcarrier, cells as "re+imj".
void write_grid_csv(std::ostream& os, const ComplexLattice& grid);

} // namespace fbmc
