// SPDX-License-Identifier: Apache-2.0
#include "fbmc/lattice.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace fbmc {

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::IAM_C: return "IAM-C";
    case Scheme::E_IAM_C: return "E-IAM-C";
    case Scheme::NPS: return "NPS";
    case Scheme::M_IAM: return "M-IAM";
    }
    throw InvalidArgument("to_string: unknown scheme");
}

Scheme parse_scheme(std::string_view name)
{
    std::string key;
    for (char c : name)
        if (c != '-' && c != '_')
            key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key == "iamc")
        return Scheme::IAM_C;
    if (key == "eiamc")
        return Scheme::E_IAM_C;
    if (key == "nps")
        return Scheme::NPS;
    if (key == "miam")
        return Scheme::M_IAM;
    throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

std::vector<double> PseudoPilotVector::magnitude() const
{
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](cd c) { return std::abs(c); });
    return out;
}

RealLattice qpsk_to_oqam(std::span<const std::uint8_t> bits, int M, int n_symbols)
{
    if (M <= 0 || n_symbols < 0)
        throw InvalidArgument("qpsk_to_oqam: M must be positive and n_symbols non-negative");
    const std::size_t expected = 2ULL * static_cast<std::size_t>(M) * static_cast<std::size_t>(n_symbols);
    if (bits.size() != expected)
        throw InvalidArgument("qpsk_to_oqam: expected " + std::to_string(expected) + " bits, got " +
                              std::to_string(bits.size()));
    RealLattice out(M, 2 * n_symbols);
    for (std::size_t k = 0; k < expected / 2; ++k) {
        const int m = static_cast<int>(k % static_cast<std::size_t>(M));
        const int t = static_cast<int>(k / static_cast<std::size_t>(M));
        out(m, 2 * t) = bits[2 * k] ? -kComponentAmplitude : kComponentAmplitude;
        out(m, 2 * t + 1) = bits[2 * k + 1] ? -kComponentAmplitude : kComponentAmplitude;
    }
    return out;
}

namespace {

using Row = std::array<cd, 3>;
constexpr cd J{0.0, 1.0};

// Preamble rows in units of d, indexed by p mod 4; columns 0, 1, 2.
//
// IAM-C: the IAM-R pattern (+, -, -, +) with odd entries turned imaginary,
// sides empty. Every neighbour term adds in phase with the pilot.
//
// E-IAM-C: IAM-C middle column; each imaginary pilot +-jd gets -+d on its
// right and +-d on its left, the real pilots get imaginary sides chosen so
// that the gamma terms add in phase as well.
//
// NPS: real, asymmetric. Even rows carry opposite-sign sides so the gamma
// terms oppose the beta terms. Odd rows leave the left side empty; their
// single side pilot adds gamma to the beta and delta terms, which gives
// sqrt(1 + (2 beta + gamma)^2). No layout reaches the table's odd form
// exactly; this one is closest, since gamma ~ 2 delta (see README).
//
// M-IAM: real middle pilots (-, +, +, -). The positive odd pilot gets +d on
// its left and -d on its right; every other row has side nulls, so the
// delta and epsilon positions around p = 1 mod 4 stay empty.
constexpr std::array<Row, 4> kIamC{{{0.0, 1.0, 0.0}, {0.0, -J, 0.0}, {0.0, -1.0, 0.0}, {0.0, J, 0.0}}};
constexpr std::array<Row, 4> kEIamC{{{J, 1.0, -J}, {-1.0, -J, 1.0}, {-J, -1.0, J}, {1.0, J, -1.0}}};
constexpr std::array<Row, 4> kNps{{{1.0, 1.0, -1.0}, {0.0, 1.0, 1.0}, {-1.0, -1.0, 1.0}, {0.0, -1.0, -1.0}}};
constexpr std::array<Row, 4> kMIam{{{0.0, -1.0, 0.0}, {1.0, 1.0, -1.0}, {0.0, 1.0, 0.0}, {0.0, -1.0, 0.0}}};

const std::array<Row, 4>& layout(Scheme s)
{
    switch (s) {
    case Scheme::IAM_C: return kIamC;
    case Scheme::E_IAM_C: return kEIamC;
    case Scheme::NPS: return kNps;
    case Scheme::M_IAM: return kMIam;
    }
    throw InvalidArgument("build_preamble: unknown scheme");
}

} // namespace

ComplexLattice build_preamble(const PreambleSpec& spec, int M, const InterferenceWeightTable& w)
{
    if (!(spec.pilot_amplitude > 0.0) || !std::isfinite(spec.pilot_amplitude))
        throw InvalidArgument("build_preamble: pilot amplitude must be positive and finite");
    if (M < 4 || M % 4 != 0)
        throw InvalidArgument("build_preamble: M must be a positive multiple of 4, got " + std::to_string(M));
    const auto& rows = layout(spec.scheme);
    ComplexLattice grid(M, kPreambleColumns);
    for (int p = 0; p < M; ++p)
        for (int c = 0; c < kPreambleColumns; ++c)
            grid(p, c) = spec.pilot_amplitude * rows[static_cast<std::size_t>(p % 4)][static_cast<std::size_t>(c)];

    const auto pilots = compute_pseudo_pilots(grid, w);
    for (int p = 1; p + 1 < M; ++p) {
        const double want = expected_magnitude(spec.scheme, p, spec.pilot_amplitude, w);
        const double got = std::abs(pilots.values[static_cast<std::size_t>(p)]);
        if (std::abs(got - want) > 1e-9 * std::max(1.0, want))
            throw ConsistencyError("build_preamble: " + std::string(to_string(spec.scheme)) + " subcarrier " +
                                   std::to_string(p) + " has |C| = " + std::to_string(got) + ", expected " +
                                   std::to_string(want));
    }
    return grid;
}

FrameGrid assemble_frame(const ComplexLattice& preamble, const RealLattice& payload)
{
    if (preamble.columns() != kPreambleColumns)
        throw InvalidArgument("assemble_frame: preamble must have 3 columns");
    if (!payload.empty() && payload.subcarriers() != preamble.subcarriers())
        throw InvalidArgument("assemble_frame: preamble and payload subcarrier counts differ");
    const int M = preamble.subcarriers();
    const int extra = payload.empty() ? 0 : payload.columns();
    FrameGrid f{ComplexLattice(M, kPreambleColumns + extra)};
    for (int n = 0; n < kPreambleColumns; ++n)
        std::copy(preamble.column(n).begin(), preamble.column(n).end(), f.symbols.column(n).begin());
    for (int n = 0; n < extra; ++n) {
        auto dst = f.symbols.column(kPreambleColumns + n);
        auto src = payload.column(n);
        for (int m = 0; m < M; ++m)
            dst[static_cast<std::size_t>(m)] = src[static_cast<std::size_t>(m)];
    }
    return f;
}

PseudoPilotVector compute_pseudo_pilots(const ComplexLattice& preamble, const InterferenceWeightTable& w)
{
    if (preamble.columns() != kPreambleColumns)
        throw InvalidArgument("compute_pseudo_pilots: preamble must have exactly 3 columns, got " +
                              std::to_string(preamble.columns()));
    const int M = preamble.subcarriers();
    if (M % 4 != 0)
        throw InvalidArgument("compute_pseudo_pilots: M must be a multiple of 4");
    PseudoPilotVector out;
    out.values.resize(static_cast<std::size_t>(M));
    for (int p = 0; p < M; ++p) {
        cd v{0.0, 0.0};
        for (int dm = -1; dm <= 1; ++dm)
            for (int dn = -1; dn <= 1; ++dn) {
                if (dm == 0 && dn == 0)
                    continue;
                const int raw = p + dm;
                const int m = (raw % M + M) % M;
                // With L = K M the carrier offset (L - 1)/2 is a half
                // integer, so g_{m+M,n} = -g_{m,n}: the ring is twisted.
                const double twist = (raw == m) ? 1.0 : -1.0;
                v += twist * w.stencil(p & 1, dm, dn) * preamble(m, kPilotColumn + dn);
            }
        out.values[static_cast<std::size_t>(p)] = preamble(p, kPilotColumn) + J * v;
    }
    return out;
}

double magnitude_closed_form(Scheme s, Parity parity, double d, const InterferenceWeightTable& w)
{
    const double b = w.beta.real(), g = w.gamma.real(), dl = w.delta.real();
    const bool odd = parity == Parity::odd;
    switch (s) {
    case Scheme::IAM_C: return d * (1.0 + 2.0 * b);
    case Scheme::E_IAM_C: return d * (1.0 + 2.0 * (b + g));
    case Scheme::NPS:
        return odd ? d * std::sqrt(1.0 + 4.0 * (b + dl) * (b + dl)) : d * std::sqrt(1.0 + 4.0 * (b - g) * (b - g));
    case Scheme::M_IAM:
        return odd ? d * std::sqrt(1.0 + 4.0 * (b + g) * (b + g)) : d * std::sqrt(1.0 + 4.0 * b * b);
    }
    throw InvalidArgument("magnitude_closed_form: unknown scheme");
}

double expected_magnitude(Scheme s, int p, double d, const InterferenceWeightTable& w)
{
    const double b = w.beta.real(), g = w.gamma.real();
    const int r = ((p % 4) + 4) % 4;
    switch (s) {
    case Scheme::IAM_C:
    case Scheme::E_IAM_C: return magnitude_closed_form(s, Parity::even, d, w);
    case Scheme::NPS:
        return r % 2 == 0 ? magnitude_closed_form(s, Parity::even, d, w)
                          : d * std::sqrt(1.0 + (2.0 * b + g) * (2.0 * b + g));
    case Scheme::M_IAM:
        return r == 1 ? magnitude_closed_form(s, Parity::odd, d, w) : magnitude_closed_form(s, Parity::even, d, w);
    }
    throw InvalidArgument("expected_magnitude: unknown scheme");
}

double grid_power(const ComplexLattice& grid)
{
    double acc = 0.0;
    for (const cd& c : grid.raw())
        acc += std::norm(c);
    return acc;
}

void write_grid_csv(std::ostream& os, const ComplexLattice& grid)
{
    for (int p = 0; p < grid.subcarriers(); ++p) {
        for (int n = 0; n < grid.columns(); ++n) {
            const cd c = grid(p, n);
            if (n)
                os << ',';
            os << std::setprecision(17) << c.real() << (std::signbit(c.imag()) ? '-' : '+')
               << std::abs(c.imag()) << 'j';
        }
        os << '\n';
    }
}

} // namespace fbmc
