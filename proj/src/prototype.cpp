// SPDX-License-Identifier: Apache-2.0
#include "fbmc/prototype.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace fbmc {

namespace {
constexpr int kMaxFilterLength = 1 << 26;
}

std::vector<double> frequency_samples(int overlap_factor, double rolloff)
{
    if (overlap_factor < 1)
        throw InvalidArgument("frequency_samples: overlap factor must be >= 1");
    if (!(rolloff >= 0.0 && rolloff <= 1.0))
        throw InvalidArgument("frequency_samples: rolloff must lie in [0, 1]");
    std::vector<double> h(static_cast<std::size_t>(overlap_factor));
    const double edge = (1.0 - rolloff) / 2.0;
    for (int k = 0; k < overlap_factor; ++k) {
        const double nu = static_cast<double>(k) / overlap_factor;
        double rc;
        if (nu <= edge)
            rc = 1.0;
        else if (nu > (1.0 + rolloff) / 2.0)
            rc = 0.0;
        else
            rc = 0.5 * (1.0 + std::cos(kPi / rolloff * (nu - edge)));
        h[static_cast<std::size_t>(k)] = std::sqrt(rc);
    }
    return h;
}

PrototypeFilter design_prototype(int num_subcarriers, int overlap_factor, double rolloff)
{
    if (num_subcarriers < 8 || num_subcarriers % 2 != 0)
        throw InvalidArgument("design_prototype: M must be even and >= 8, got " + std::to_string(num_subcarriers));
    const auto h = frequency_samples(overlap_factor, rolloff);
    if (overlap_factor > kMaxFilterLength / num_subcarriers)
        throw InvalidArgument("design_prototype: K*M exceeds the supported filter length");

    const std::size_t len = static_cast<std::size_t>(num_subcarriers) * static_cast<std::size_t>(overlap_factor);
    const double centre = (static_cast<double>(len) - 1.0) / 2.0;
    PrototypeFilter out;
    out.num_subcarriers = num_subcarriers;
    out.overlap_factor = overlap_factor;
    out.rolloff = rolloff;
    out.coefficients.resize(len);

    // Build one half and mirror it so symmetry holds bit-for-bit.
    for (std::size_t l = 0; l < (len + 1) / 2; ++l) {
        double v = h[0];
        for (int k = 1; k < overlap_factor; ++k)
            v += 2.0 * h[static_cast<std::size_t>(k)] *
                 std::cos(2.0 * kPi * k * (static_cast<double>(l) - centre) / static_cast<double>(len));
        out.coefficients[l] = v;
        out.coefficients[len - 1 - l] = v;
    }

    double energy = 0.0;
    for (double v : out.coefficients)
        energy += v * v;
    if (!(energy > 0.0) || !std::isfinite(energy))
        throw ConsistencyError("design_prototype: pulse has zero or non-finite energy");
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : out.coefficients)
        v *= scale;
    return out;
}

namespace {

// e^{j pi k / 2} for integer k.
cd quarter_turn(long k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

} // namespace

cd basis_sample(const PrototypeFilter& g, int m, int n, long l)
{
    const long M = g.num_subcarriers;
    const long len = static_cast<long>(g.length());
    const long local = l - n * (M / 2);
    if (local < 0 || local >= len)
        return {0.0, 0.0};
    const double centre = (static_cast<double>(len) - 1.0) / 2.0;
    // Reduce the carrier phase modulo a full turn before the cos/sin call.
    const double cycles = static_cast<double>(m) * (static_cast<double>(l) - centre) / static_cast<double>(M);
    const double frac = cycles - std::floor(cycles);
    const cd carrier = std::polar(1.0, 2.0 * kPi * frac);
    const cd lattice_phase = quarter_turn(static_cast<long>(m) + n) * quarter_turn(-2L * m * n);
    return g.coefficients[static_cast<std::size_t>(local)] * carrier * lattice_phase;
}

cd ambiguity(const PrototypeFilter& g, int dm, int dn, int p, int q)
{
    const int M = g.num_subcarriers;
    if (M <= 0 || g.coefficients.empty())
        throw InvalidArgument("ambiguity: empty prototype");
    if (std::abs(dm) > M / 2)
        throw InvalidArgument("ambiguity: |dm| must not exceed M/2");
    if (std::abs(dn) > 2 * g.overlap_factor)
        throw InvalidArgument("ambiguity: |dn| must not exceed 2K");
    const long half = M / 2;
    const long len = static_cast<long>(g.length());
    const long lo = std::max(static_cast<long>(q) * half, static_cast<long>(q + dn) * half);
    const long hi = std::min(static_cast<long>(q) * half, static_cast<long>(q + dn) * half) + len;
    cd acc{0.0, 0.0};
    for (long l = lo; l < hi; ++l)
        acc += basis_sample(g, p + dm, q + dn, l) * std::conj(basis_sample(g, p, q, l));
    return acc;
}

namespace {

// e^{-j 2 pi s (L-1)/(2M)} sum_{l} g(l) g(l - shift) e^{j 2 pi s l / M}
cd modulated_overlap(const PrototypeFilter& g, std::size_t shift, int s)
{
    const double M = g.num_subcarriers;
    const std::size_t len = g.length();
    cd acc{0.0, 0.0};
    for (std::size_t l = shift; l < len; ++l)
        acc += g.coefficients[l] * g.coefficients[l - shift] *
               std::polar(1.0, 2.0 * kPi * s * static_cast<double>(l) / M);
    return acc * std::polar(1.0, -2.0 * kPi * s * (static_cast<double>(len) - 1.0) / (2.0 * M));
}

} // namespace

InterferenceWeightTable compute_weights(const PrototypeFilter& g)
{
    if (g.num_subcarriers < 4 || g.coefficients.empty())
        throw InvalidArgument("compute_weights: need M >= 4 and a non-empty prototype");
    const std::size_t half = static_cast<std::size_t>(g.num_subcarriers / 2);
    InterferenceWeightTable w;
    w.beta = modulated_overlap(g, 0, 1);
    w.gamma = modulated_overlap(g, half, 0);
    w.delta = cd{0.0, -1.0} * modulated_overlap(g, half, 1);
    w.epsilon_plus = modulated_overlap(g, half, 2);
    w.epsilon_minus = modulated_overlap(g, half, -2);
    if (w.max_imaginary() > 1e-9)
        throw ConsistencyError("compute_weights: weights are not real (max |imag| = " +
                               std::to_string(w.max_imaginary()) + ")");
    return w;
}

double InterferenceWeightTable::max_imaginary() const
{
    return std::max({std::abs(beta.imag()), std::abs(gamma.imag()), std::abs(delta.imag()),
                     std::abs(epsilon_plus.imag()), std::abs(epsilon_minus.imag())});
}

double InterferenceWeightTable::stencil(int parity, int dm, int dn) const
{
    if (dm < -2 || dm > 2 || dn < -1 || dn > 1)
        throw InvalidArgument("stencil: offset outside the 5 x 3 neighbourhood");
    const double s = (parity & 1) ? -1.0 : 1.0;
    const double b = beta.real(), gm = gamma.real(), dl = delta.real();
    if (dn == 0) {
        if (dm == 0)
            return 1.0;
        if (dm == 1)
            return b;
        if (dm == -1)
            return -b;
        return 0.0;
    }
    switch (dm) {
    case 0: return dn > 0 ? s * gm : -s * gm;
    case 1:
    case -1: return s * dl;
    default: {
        const double e = (dm > 0 ? epsilon_plus : epsilon_minus).real();
        return dn > 0 ? -s * e : s * e;
    }
    }
}

std::array<std::string, 4> InterferenceWeightTable::ordering() const
{
    std::array<std::pair<double, std::string>, 4> v{{{beta.real(), "beta"},
                                                     {gamma.real(), "gamma"},
                                                     {delta.real(), "delta"},
                                                     {epsilon_plus.real(), "epsilon"}}};
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    return {v[0].second, v[1].second, v[2].second, v[3].second};
}

void write_prototype(std::ostream& os, const PrototypeFilter& g)
{
    os << "# " << g.num_subcarriers << ' ' << g.overlap_factor << ' ' << std::setprecision(17) << g.rolloff << '\n';
    for (double v : g.coefficients)
        os << std::setprecision(17) << v << '\n';
    if (!os)
        throw IoError("write_prototype: stream write failed");
}

PrototypeFilter read_prototype(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
        throw IoError("read_prototype: missing '# M K rolloff' header");
    std::istringstream head(line.substr(1));
    PrototypeFilter g;
    if (!(head >> g.num_subcarriers >> g.overlap_factor >> g.rolloff))
        throw IoError("read_prototype: malformed header '" + line + "'");
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        double v;
        if (!(ls >> v))
            throw IoError("read_prototype: bad coefficient line '" + line + "'");
        g.coefficients.push_back(v);
    }
    if (g.coefficients.size() != static_cast<std::size_t>(g.num_subcarriers) * g.overlap_factor)
        throw IoError("read_prototype: expected " + std::to_string(g.num_subcarriers * g.overlap_factor) +
                      " coefficients, found " + std::to_string(g.coefficients.size()));
    return g;
}

} // namespace fbmc
