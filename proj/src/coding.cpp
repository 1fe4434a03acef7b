// SPDX-License-Identifier: Apache-2.0
#include "fbmc/coding.hpp"

#include <bit>
#include <limits>
#include <string>

#include "fbmc/common.hpp"

namespace fbmc {
namespace {

void check_code(const ConvCode& code)
{
    if (code.constraint_length < 2 || code.constraint_length > 16)
        throw InvalidArgument("ConvCode: constraint length must lie in [2, 16]");
    const unsigned limit = 1u << code.constraint_length;
    for (unsigned g : code.generators)
        if (g == 0 || g >= limit)
            throw InvalidArgument("ConvCode: generator does not fit the constraint length");
}

inline std::uint8_t parity(unsigned x) { return static_cast<std::uint8_t>(std::popcount(x) & 1); }

} // namespace

std::vector<std::uint8_t> conv_encode(std::span<const std::uint8_t> bits, const ConvCode& code)
{
    check_code(code);
    const int mem = code.constraint_length - 1;
    std::vector<std::uint8_t> out;
    out.reserve(2 * (bits.size() + static_cast<std::size_t>(mem)));
    unsigned state = 0; // previous inputs, newest at bit mem-1
    auto step = [&](unsigned b) {
        const unsigned reg = (b << mem) | state;
        out.push_back(parity(reg & code.generators[0]));
        out.push_back(parity(reg & code.generators[1]));
        state = reg >> 1;
    };
    for (std::uint8_t b : bits)
        step(b & 1u);
    for (int i = 0; i < mem; ++i)
        step(0);
    return out;
}

std::vector<std::uint8_t> viterbi_decode(std::span<const std::uint8_t> coded, const ConvCode& code)
{
    check_code(code);
    const int mem = code.constraint_length - 1;
    if (coded.size() % 2 != 0)
        throw InvalidArgument("viterbi_decode: coded length " + std::to_string(coded.size()) + " is odd");
    if (coded.size() < 2 * static_cast<std::size_t>(mem))
        throw InvalidArgument("viterbi_decode: coded length " + std::to_string(coded.size()) +
                              " is shorter than the tail");
    if (mem > 6)
        throw InvalidArgument("viterbi_decode: only constraint lengths up to 7 are supported");

    const unsigned states = 1u << mem;
    const std::size_t steps = coded.size() / 2;

    // Branch labels for (state, input): two output bits packed as o0 | o1 << 1.
    std::vector<std::uint8_t> label(2 * states);
    for (unsigned s = 0; s < states; ++s)
        for (unsigned b = 0; b < 2; ++b) {
            const unsigned reg = (b << mem) | s;
            label[2 * s + b] =
                static_cast<std::uint8_t>(parity(reg & code.generators[0]) | (parity(reg & code.generators[1]) << 1));
        }

    constexpr unsigned kInf = std::numeric_limits<unsigned>::max() / 2;
    std::vector<unsigned> metric(states, kInf), next(states);
    metric[0] = 0;
    // Bit x of decisions[t] for next-state ns: predecessor was ((ns << 1) | x) & mask.
    std::vector<std::uint64_t> decisions(steps, 0);
    const unsigned mask = states - 1;

    for (std::size_t t = 0; t < steps; ++t) {
        const unsigned rx = (coded[2 * t] & 1u) | ((coded[2 * t + 1] & 1u) << 1);
        std::uint64_t dec = 0;
        for (unsigned ns = 0; ns < states; ++ns) {
            const unsigned b = ns >> (mem - 1);
            const unsigned s0 = (ns << 1) & mask;
            const unsigned s1 = s0 | 1u;
            const unsigned m0 = metric[s0] + static_cast<unsigned>(std::popcount(rx ^ label[2 * s0 + b]));
            const unsigned m1 = metric[s1] + static_cast<unsigned>(std::popcount(rx ^ label[2 * s1 + b]));
            if (m1 < m0) {
                next[ns] = m1;
                dec |= std::uint64_t{1} << ns;
            } else {
                next[ns] = m0;
            }
        }
        decisions[t] = dec;
        metric.swap(next);
    }

    std::vector<std::uint8_t> out(steps - static_cast<std::size_t>(mem));
    unsigned ns = 0;
    for (std::size_t t = steps; t-- > 0;) {
        const unsigned b = ns >> (mem - 1);
        if (t < out.size())
            out[t] = static_cast<std::uint8_t>(b);
        const unsigned x = static_cast<unsigned>((decisions[t] >> ns) & 1u);
        ns = ((ns << 1) | x) & mask;
    }
    return out;
}

} // namespace fbmc
