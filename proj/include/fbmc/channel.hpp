// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "fbmc/common.hpp"

namespace fbmc {

enum class ChannelModel { AWGN, RAYLEIGH, RICIAN, VEH_A, IEEE80222, IEEE80211 };

inline constexpr ChannelModel kAllChannels[] = {ChannelModel::AWGN,  ChannelModel::RAYLEIGH,
                                                ChannelModel::RICIAN, ChannelModel::VEH_A,
                                                ChannelModel::IEEE80222, ChannelModel::IEEE80211};

// "awgn", "rayleigh", "rician", "veh-a", "ieee80222", "ieee80211"
std::string_view to_string(ChannelModel c);
ChannelModel parse_channel(std::string_view name);

enum class Fading { none, rayleigh, rician };

// 512 subcarriers at 15 kHz.
inline constexpr double kDefaultSampleRate = 7.68e6;

struct Tap {
    double delay_s = 0.0;
    double power_db = 0.0;
};

struct ChannelProfile {
    ChannelModel name = ChannelModel::AWGN;
    std::vector<Tap> taps; // powers normalized to sum 1 (linear)
    Fading fading = Fading::none;
    double rician_k_db = 0.0; // tap 0 only
    double sample_rate = kDefaultSampleRate;
    std::string source;

    std::vector<double> linear_powers() const;
};

ChannelProfile make_profile(ChannelModel name, double sample_rate = kDefaultSampleRate);

// Builds a profile from a raw tap table: checks ordering, normalizes power.
ChannelProfile make_custom_profile(std::vector<Tap> taps, Fading fading, double sample_rate,
                                   double rician_k_db = 0.0);

// One block-fading draw. Taps landing on the same sample (after rounding
// each delay to the nearest sample) are summed.
struct ChannelRealization {
    std::vector<cd> impulse_response; // dense, sample spaced
    std::vector<std::size_t> tap_offsets; // nonzero support of impulse_response
    std::vector<cd> cfr;                  // H_p, p = 0..M-1
    std::uint64_t seed = 0;
};

ChannelRealization realize(const ChannelProfile& profile, std::uint64_t seed, int num_subcarriers);

// H_p = sum_n h[n] e^{-j 2 pi p n / M}
std::vector<cd> channel_frequency_response(std::span<const cd> impulse_response, int num_subcarriers);

// Linear convolution; output length = input + impulse_response.size() - 1.
std::vector<cd> apply_channel(std::span<const cd> signal, const ChannelRealization& ch);

inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();

// Adds CN(0, sigma^2) with sigma^2 = reference_power / 10^(snr_db / 10).
// snr_db = +inf leaves the signal untouched.
std::vector<cd> add_awgn(std::span<const cd> signal, double snr_db, std::uint64_t seed, double reference_power);

// Fixture files: "# name source" header, then "delay_ns power_db" lines.
void write_profile(std::ostream& os, const ChannelProfile& p);
std::vector<Tap> read_profile_taps(std::istream& is);

} // namespace fbmc
