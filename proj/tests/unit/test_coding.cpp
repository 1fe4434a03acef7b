// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fbmc/coding.hpp"
#include "fbmc/common.hpp"
#include "fbmc/rng.hpp"

using namespace fbmc;
using Bits = std::vector<std::uint8_t>;

namespace {

Bits random_bits(std::size_t n, Rng& r)
{
    Bits b(n);
    for (auto& x : b)
        x = r.bit();
    return b;
}

int hamming(const Bits& a, const Bits& b)
{
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += a[i] != b[i];
    return d;
}

} // namespace

TEST_CASE("impulse response of (133,171)")
{
    // Register trace by hand: g1 = 1011011, g2 = 1111001, MSB first.
    const Bits expected{1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1};
    CHECK(conv_encode(Bits{1}) == expected);
}

TEST_CASE("encoder is linear and zero-terminated")
{
    for (std::size_t n : {0u, 1u, 7u, 64u})
        CHECK(conv_encode(Bits(n, 0)) == Bits(2 * (n + 6), 0));

    Rng r(11);
    for (int t = 0; t < 100; ++t) {
        const Bits a = random_bits(50, r), b = random_bits(50, r);
        Bits x(50);
        for (std::size_t i = 0; i < 50; ++i)
            x[i] = a[i] ^ b[i];
        const Bits ea = conv_encode(a), eb = conv_encode(b), ex = conv_encode(x);
        REQUIRE(ea.size() == 112);
        for (std::size_t i = 0; i < ex.size(); ++i)
            CHECK(ex[i] == (ea[i] ^ eb[i]));
    }
}

TEST_CASE("noiseless round trip")
{
    Rng r(12);
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        const Bits b = random_bits(80, r);
        failures += viterbi_decode(conv_encode(b)) != b;
    }
    CHECK(failures == 0);
}

TEST_CASE("every 2-bit error pattern is corrected")
{
    Rng r(13);
    const Bits b = random_bits(20, r);
    const Bits c = conv_encode(b);
    int failures = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            Bits e = c;
            e[i] ^= 1;
            e[j] ^= 1;
            failures += viterbi_decode(e) != b;
        }
    CHECK(failures == 0);
}

TEST_CASE("decoder argument checks")
{
    CHECK(viterbi_decode(Bits(12, 0)).empty());
    CHECK_THROWS_AS(viterbi_decode(Bits(13, 0)), InvalidArgument);
    CHECK_THROWS_AS(viterbi_decode(Bits(10, 0)), InvalidArgument);
}

TEST_CASE("decoder is maximum likelihood on short blocks")
{
    // Exhaustive search over all 2^10 information words.
    constexpr int n = 10;
    std::vector<Bits> book;
    for (unsigned w = 0; w < (1u << n); ++w) {
        Bits b(n);
        for (int i = 0; i < n; ++i)
            b[static_cast<std::size_t>(i)] = (w >> i) & 1u;
        book.push_back(conv_encode(b));
    }
    Rng r(14);
    for (int t = 0; t < 200; ++t) {
        const Bits b = random_bits(n, r);
        Bits rx = conv_encode(b);
        for (auto& x : rx)
            x ^= r.uniform() < 0.12 ? 1 : 0;
        const Bits dec = viterbi_decode(rx);
        REQUIRE(dec.size() == n);
        int best = 1 << 30;
        for (const auto& cw : book)
            best = std::min(best, hamming(cw, rx));
        const int got = hamming(conv_encode(dec), rx);
        CHECK(got == best);
        CHECK(got <= hamming(conv_encode(b), rx));
    }
}
