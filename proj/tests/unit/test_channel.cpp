// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fbmc/channel.hpp"
#include "fbmc/lattice.hpp"
#include "fbmc/rng.hpp"
#include "fbmc/transceiver.hpp"

using namespace fbmc;

namespace {

std::vector<cd> random_signal(std::size_t n, std::uint64_t seed)
{
    Rng r(seed);
    std::vector<cd> v(n);
    for (auto& x : v)
        x = r.complex_normal(1.0);
    return v;
}

std::vector<Tap> fixture(const std::string& name)
{
    std::ifstream f(std::string(FBMC_DATA_DIR) + "/channels/" + name + ".txt");
    REQUIRE(f.good());
    return read_profile_taps(f);
}

} // namespace

TEST_CASE("channel names")
{
    for (ChannelModel c : kAllChannels)
        CHECK(parse_channel(to_string(c)) == c);
    CHECK(parse_channel("VEH_A") == ChannelModel::VEH_A);
    CHECK(parse_channel("ieee802.22") == ChannelModel::IEEE80222);
    CHECK_THROWS_AS(parse_channel("pedestrian-b"), InvalidArgument);
}

TEST_CASE("profiles are normalized and well formed")
{
    const std::map<ChannelModel, std::size_t> paths{{ChannelModel::AWGN, 1},  {ChannelModel::RAYLEIGH, 2},
                                                    {ChannelModel::RICIAN, 1}, {ChannelModel::VEH_A, 6},
                                                    {ChannelModel::IEEE80222, 6}, {ChannelModel::IEEE80211, 21}};
    for (ChannelModel c : kAllChannels) {
        CAPTURE(to_string(c));
        const auto p = make_profile(c);
        CHECK(p.taps.size() == paths.at(c));
        double total = 0.0;
        for (double v : p.linear_powers())
            total += v;
        CHECK(std::abs(total - 1.0) < 1e-12);
        for (std::size_t i = 1; i < p.taps.size(); ++i)
            CHECK(p.taps[i].delay_s > p.taps[i - 1].delay_s);
    }
    const auto awgn = make_profile(ChannelModel::AWGN);
    CHECK(awgn.fading == Fading::none);
    CHECK(awgn.taps[0].delay_s == 0.0);
    CHECK(awgn.taps[0].power_db == 0.0);
    const auto ray = make_profile(ChannelModel::RAYLEIGH);
    CHECK(ray.fading == Fading::rayleigh);
    CHECK(ray.taps[0].power_db == doctest::Approx(ray.taps[1].power_db));
}

TEST_CASE("in-code tables match the committed fixtures")
{
    const std::pair<ChannelModel, const char*> files[] = {{ChannelModel::VEH_A, "veh_a"},
                                                          {ChannelModel::IEEE80222, "ieee80222"},
                                                          {ChannelModel::IEEE80211, "ieee80211"},
                                                          {ChannelModel::RAYLEIGH, "rayleigh"}};
    for (const auto& [model, name] : files) {
        CAPTURE(name);
        const auto p = make_profile(model);
        const auto q = make_custom_profile(fixture(name), p.fading, p.sample_rate);
        REQUIRE(p.taps.size() == q.taps.size());
        for (std::size_t i = 0; i < p.taps.size(); ++i) {
            CHECK(std::abs(p.taps[i].delay_s - q.taps[i].delay_s) < 1e-15);
            CHECK(std::abs(p.taps[i].power_db - q.taps[i].power_db) < 1e-9);
        }
    }
}

TEST_CASE("profile fixture writer round trip")
{
    const auto p = make_profile(ChannelModel::VEH_A);
    std::stringstream ss;
    write_profile(ss, p);
    const auto taps = read_profile_taps(ss);
    REQUIRE(taps.size() == 6);
    CHECK(taps[3].delay_s == doctest::Approx(1090e-9));
}

TEST_CASE("custom profile validation")
{
    CHECK_THROWS_AS(make_custom_profile({}, Fading::none, 1e6), InvalidArgument);
    CHECK_THROWS_AS(make_custom_profile({{1e-6, 0}, {0.5e-6, 0}}, Fading::none, 1e6), InvalidArgument);
    CHECK_THROWS_AS(make_custom_profile({{-1e-6, 0}}, Fading::none, 1e6), InvalidArgument);
    CHECK_THROWS_AS(make_custom_profile({{0, 0}}, Fading::none, 0.0), InvalidArgument);
}

TEST_CASE("AWGN realization is the identity")
{
    for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
        const auto r = realize(make_profile(ChannelModel::AWGN), seed, 64);
        REQUIRE(r.impulse_response.size() == 1);
        CHECK(r.impulse_response[0] == cd(1, 0));
        for (const cd& h : r.cfr)
            CHECK(h == cd(1, 0));
    }
}

TEST_CASE("realizations are deterministic per seed")
{
    const auto p = make_profile(ChannelModel::VEH_A);
    const auto a = realize(p, 77, 512), b = realize(p, 77, 512), c = realize(p, 78, 512);
    CHECK(a.impulse_response == b.impulse_response);
    CHECK(a.cfr == b.cfr);
    CHECK(a.impulse_response != c.impulse_response);
}

TEST_CASE("cfr is the DFT of the sample-spaced taps")
{
    const auto r = realize(make_profile(ChannelModel::VEH_A), 5, 64);
    for (int p = 0; p < 64; ++p) {
        cd want{0, 0};
        for (std::size_t n = 0; n < r.impulse_response.size(); ++n)
            want += r.impulse_response[n] * std::exp(cd(0, -2.0 * kPi * p * static_cast<double>(n) / 64.0));
        CHECK(std::abs(r.cfr[static_cast<std::size_t>(p)] - want) < 1e-12);
    }
}

TEST_CASE("Rician with a huge K factor is deterministic")
{
    const auto p = make_custom_profile({{0.0, 0.0}}, Fading::rician, kDefaultSampleRate, 60.0);
    double mean_re = 0.0, mean_im = 0.0;
    std::vector<cd> draws;
    for (std::uint64_t s = 0; s < 1000; ++s)
        draws.push_back(realize(p, s, 8).impulse_response[0]);
    for (const cd& d : draws) {
        mean_re += d.real();
        mean_im += d.imag();
    }
    mean_re /= 1000;
    mean_im /= 1000;
    double var = 0.0;
    for (const cd& d : draws)
        var += std::norm(d - cd(mean_re, mean_im));
    var /= 1000;
    CHECK(var < 1e-4);
    CHECK(mean_re == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Rayleigh tap powers by Monte Carlo")
{
    const auto p = make_profile(ChannelModel::RAYLEIGH);
    double p0 = 0.0, p1 = 0.0;
    const int draws = 100000;
    for (int s = 0; s < draws; ++s) {
        const auto r = realize(p, static_cast<std::uint64_t>(s), 8);
        p0 += std::norm(r.impulse_response[r.tap_offsets[0]]);
        p1 += std::norm(r.impulse_response[r.tap_offsets[1]]);
    }
    CHECK(std::abs(p0 / draws - 0.5) < 0.5 * 0.02);
    CHECK(std::abs(p1 / draws - 0.5) < 0.5 * 0.02);
}

TEST_CASE("mean channel energy is 1 for the fading profiles")
{
    for (ChannelModel c : {ChannelModel::RAYLEIGH, ChannelModel::VEH_A, ChannelModel::RICIAN}) {
        CAPTURE(to_string(c));
        const auto p = make_profile(c);
        double e = 0.0;
        const int draws = 100000;
        for (int s = 0; s < draws; ++s)
            for (const cd& h : realize(p, static_cast<std::uint64_t>(s) + 1000000, 8).impulse_response)
                e += std::norm(h);
        CHECK(std::abs(e / draws - 1.0) < 0.02);
    }
}

TEST_CASE("apply_channel")
{
    const auto x = random_signal(200, 3);
    ChannelRealization id;
    id.impulse_response = {1.0};
    id.tap_offsets = {0};
    CHECK(apply_channel(x, id) == x);

    ChannelRealization delay;
    delay.impulse_response = {0.0, 1.0};
    delay.tap_offsets = {1};
    const auto y = apply_channel(x, delay);
    REQUIRE(y.size() == 201);
    CHECK(y[0] == cd(0, 0));
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(y[i + 1] == x[i]);

    // Brute-force O(n k) convolution oracle.
    const auto r = realize(make_profile(ChannelModel::VEH_A), 9, 64);
    const auto got = apply_channel(x, r);
    const auto& h = r.impulse_response;
    REQUIRE(got.size() == x.size() + h.size() - 1);
    for (std::size_t n = 0; n < got.size(); ++n) {
        cd want{0, 0};
        for (std::size_t k = 0; k < h.size(); ++k)
            if (n >= k && n - k < x.size())
                want += h[k] * x[n - k];
        CHECK(std::abs(got[n] - want) < 1e-12);
    }
}

TEST_CASE("add_awgn")
{
    const auto x = random_signal(1000, 4);
    CHECK(add_awgn(x, kNoiselessSnr, 1, 1.0) == x);
    CHECK(add_awgn(x, 10.0, 5, 1.0) == add_awgn(x, 10.0, 5, 1.0));
    CHECK(add_awgn(x, 10.0, 5, 1.0) != add_awgn(x, 10.0, 6, 1.0));

    const std::vector<cd> ones(1000000, cd(1.0, 0.0));
    const auto y = add_awgn(ones, 0.0, 42, 1.0);
    double pw = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        pw += std::norm(y[i] - ones[i]);
    pw /= static_cast<double>(y.size());
    CHECK(pw >= 0.99);
    CHECK(pw <= 1.01);

    CHECK_THROWS_AS(add_awgn(x, std::nan(""), 1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(add_awgn(x, 10.0, 1, 0.0), InvalidArgument);
}

TEST_CASE("per-subcarrier flat model improves with M")
{
    // Unit pilot through a fixed Veh-A draw; the AFB output at the pilot
    // approaches H_p as the subcarrier spacing shrinks.
    const auto profile = make_profile(ChannelModel::VEH_A);
    double previous = 1e9;
    for (int M : {64, 128, 256, 512}) {
        const auto g = design_prototype(M, 4, 1.0);
        const auto r = realize(profile, 2024, M);
        double err = 0.0, ref = 0.0;
        for (int p = 0; p < M; p += M / 16) {
            ComplexLattice grid(M, 3);
            grid(p, 1) = 1.0;
            const auto rx = apply_channel(synthesize(grid, g).samples, r);
            const auto y = analyze(rx, g, M, 3);
            err += std::norm(y(p, 1) - r.cfr[static_cast<std::size_t>(p)]);
            ref += std::norm(r.cfr[static_cast<std::size_t>(p)]);
        }
        const double rel = err / ref;
        CAPTURE(M);
        CAPTURE(rel);
        CHECK(rel < previous);
        previous = rel;
    }
    CHECK(previous < 1e-3);
}
