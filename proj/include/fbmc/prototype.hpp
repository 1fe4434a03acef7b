// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "fbmc/common.hpp"

namespace fbmc {

// Real, symmetric, unit-energy prototype pulse of length K*M.
struct PrototypeFilter {
    std::vector<double> coefficients;
    int num_subcarriers = 0;
    int overlap_factor = 0;
    double rolloff = 0.0;

    std::size_t length() const { return coefficients.size(); }
};

// Square-root raised-cosine samples H_k, k = 0..K-1, on the grid k/K.
std::vector<double> frequency_samples(int overlap_factor, double rolloff);

// Frequency-sampling design:
//   g(l) = H_0 + 2 sum_{k=1}^{K-1} H_k cos(2 pi k (l - (L-1)/2) / L),  L = K M
// followed by normalization to unit energy.
// Requires M even and >= 8, K >= 1, rolloff in [0, 1].
PrototypeFilter design_prototype(int num_subcarriers, int overlap_factor, double rolloff = 1.0);

// Sample l of the OQAM basis function g_{m,n}:
//   g(l - nM/2) e^{j 2 pi m (l - (L-1)/2) / M} e^{j (m + n) pi/2} e^{-j pi m n}
// Zero outside the support. l is absolute time.
cd basis_sample(const PrototypeFilter& g, int m, int n, long l);

// <g_{p+dm, q+dn}, g_{p,q}> by direct summation over the lattice basis.
// Requires |dm| <= M/2 and |dn| <= 2K.
cd ambiguity(const PrototypeFilter& g, int dm, int dn, int p = 0, int q = 0);

// First-ring interference weights, each a closed-form sum over g.
// The sums are complex but real after the phase compensation; the
// imaginary parts are kept so callers can check that.
//   beta    neighbour (p+-1, q)
//   gamma   neighbour (p, q+-1)
//   delta   neighbour (p+-1, q+-1)
//   epsilon neighbour (p+-2, q+-1), one value per frequency branch
struct InterferenceWeightTable {
    cd beta;
    cd gamma;
    cd delta;
    cd epsilon_plus;
    cd epsilon_minus;

    // Real coefficient w with <g_{p+dm,q+dn}, g_{p,q}> = j w for the 5 x 3
    // neighbourhood dm = -2..2, dn = -1..1 of a subcarrier with the given
    // parity (0 even, 1 odd). The centre entry is the symbol itself (1).
    double stencil(int parity, int dm, int dn) const;

    // Largest |imag| over the five weights.
    double max_imaginary() const;

    // Names of the four weights sorted by decreasing real value.
    std::array<std::string, 4> ordering() const;
};

// Throws ConsistencyError if any weight has |imag| > 1e-9.
InterferenceWeightTable compute_weights(const PrototypeFilter& g);

// Text fixture: "# M K rolloff" header, then one coefficient per line.
void write_prototype(std::ostream& os, const PrototypeFilter& g);
PrototypeFilter read_prototype(std::istream& is);

} // namespace fbmc
