// SPDX-License-Identifier: Apache-2.0
#include "fbmc/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "fbmc/kernels.hpp"
#include "fbmc/rng.hpp"

namespace fbmc {

std::string_view to_string(ChannelModel c)
{
    switch (c) {
    case ChannelModel::AWGN: return "awgn";
    case ChannelModel::RAYLEIGH: return "rayleigh";
    case ChannelModel::RICIAN: return "rician";
    case ChannelModel::VEH_A: return "veh-a";
    case ChannelModel::IEEE80222: return "ieee80222";
    case ChannelModel::IEEE80211: return "ieee80211";
    }
    throw InvalidArgument("to_string: unknown channel");
}

ChannelModel parse_channel(std::string_view name)
{
    std::string key;
    for (char c : name)
        if (c != '-' && c != '_' && c != '.')
            key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (ChannelModel c : kAllChannels) {
        std::string k;
        for (char ch : to_string(c))
            if (ch != '-')
                k += ch;
        if (k == key)
            return c;
    }
    throw InvalidArgument("unknown channel '" + std::string(name) + "'");
}

std::vector<double> ChannelProfile::linear_powers() const
{
    std::vector<double> out;
    out.reserve(taps.size());
    for (const Tap& t : taps)
        out.push_back(std::pow(10.0, t.power_db / 10.0));
    return out;
}

ChannelProfile make_custom_profile(std::vector<Tap> taps, Fading fading, double sample_rate, double rician_k_db)
{
    if (taps.empty())
        throw InvalidArgument("channel profile: at least one tap required");
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
        throw InvalidArgument("channel profile: sample rate must be positive");
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (!(taps[i].delay_s >= 0.0) || !std::isfinite(taps[i].power_db))
            throw InvalidArgument("channel profile: delays must be >= 0 and powers finite");
        if (i > 0 && !(taps[i].delay_s > taps[i - 1].delay_s))
            throw InvalidArgument("channel profile: delays must be strictly increasing");
    }
    double total = 0.0;
    for (const Tap& t : taps)
        total += std::pow(10.0, t.power_db / 10.0);
    const double shift = 10.0 * std::log10(total);
    for (Tap& t : taps)
        t.power_db -= shift;

    ChannelProfile p;
    p.taps = std::move(taps);
    p.fading = fading;
    p.sample_rate = sample_rate;
    p.rician_k_db = rician_k_db;
    return p;
}

ChannelProfile make_profile(ChannelModel name, double sample_rate)
{
    std::vector<Tap> taps;
    Fading fading = Fading::none;
    double k_db = 0.0;
    std::string source;
    switch (name) {
    case ChannelModel::AWGN:
        taps = {{0.0, 0.0}};
        source = "identity";
        break;
    case ChannelModel::RAYLEIGH:
        taps = {{0.0, 0.0}, {1e-6, 0.0}};
        fading = Fading::rayleigh;
        source = "two equal-power paths, 1 us apart";
        break;
    case ChannelModel::RICIAN:
        taps = {{0.0, 0.0}};
        fading = Fading::rician;
        k_db = 10.0;
        source = "single path, K = 10 dB";
        break;
    case ChannelModel::VEH_A:
        taps = {{0.0, 0.0}, {310e-9, -1.0}, {710e-9, -9.0}, {1090e-9, -10.0}, {1730e-9, -15.0}, {2510e-9, -20.0}};
        fading = Fading::rayleigh;
        source = "ITU-R M.1225 vehicular A";
        break;
    case ChannelModel::IEEE80222:
        taps = {{0.0, 0.0}, {3e-6, -7.0}, {8e-6, -15.0}, {11e-6, -22.0}, {13e-6, -24.0}, {21e-6, -19.0}};
        source = "IEEE 802.22 WRAN profile A";
        break;
    case ChannelModel::IEEE80211:
        // Exponential decay, 25 ns spacing, 50 ns RMS spread.
        for (int k = 0; k < 21; ++k)
            taps.push_back({k * 25e-9, 10.0 * std::log10(std::exp(-k / 2.0))});
        source = "IEEE 802.11 exponential, 50 ns rms";
        break;
    }
    if (taps.empty())
        throw InvalidArgument("make_profile: unknown channel");
    ChannelProfile p = make_custom_profile(std::move(taps), fading, sample_rate, k_db);
    p.name = name;
    p.source = std::move(source);
    return p;
}

std::vector<cd> channel_frequency_response(std::span<const cd> h, int num_subcarriers)
{
    if (num_subcarriers <= 0)
        throw InvalidArgument("channel_frequency_response: M must be positive");
    const long M = num_subcarriers;
    std::vector<cd> out(static_cast<std::size_t>(M), cd{0.0, 0.0});
    for (std::size_t n = 0; n < h.size(); ++n) {
        if (h[n] == cd{0.0, 0.0})
            continue;
        for (long p = 0; p < M; ++p) {
            const long r = static_cast<long>((static_cast<unsigned long long>(p) * n) % static_cast<unsigned long long>(M));
            out[static_cast<std::size_t>(p)] += h[n] * std::polar(1.0, -2.0 * kPi * static_cast<double>(r) / M);
        }
    }
    return out;
}

ChannelRealization realize(const ChannelProfile& profile, std::uint64_t seed, int num_subcarriers)
{
    if (profile.taps.empty())
        throw InvalidArgument("realize: empty profile");
    Rng rng(seed ^ 0x6368616e6e656cULL);
    const auto powers = profile.linear_powers();
    std::map<std::size_t, cd> merged;
    for (std::size_t k = 0; k < profile.taps.size(); ++k) {
        const double pw = powers[k];
        cd gain;
        switch (profile.fading) {
        case Fading::none: gain = std::sqrt(pw); break;
        case Fading::rayleigh: gain = rng.complex_normal(pw); break;
        case Fading::rician:
            if (k == 0) {
                const double K = std::pow(10.0, profile.rician_k_db / 10.0);
                gain = std::sqrt(pw * K / (K + 1.0)) + rng.complex_normal(pw / (K + 1.0));
            } else {
                gain = rng.complex_normal(pw);
            }
            break;
        }
        const auto offset = static_cast<std::size_t>(std::llround(profile.taps[k].delay_s * profile.sample_rate));
        merged[offset] += gain;
    }

    ChannelRealization r;
    r.seed = seed;
    r.impulse_response.assign(merged.rbegin()->first + 1, cd{0.0, 0.0});
    for (const auto& [off, gain] : merged) {
        r.impulse_response[off] = gain;
        r.tap_offsets.push_back(off);
    }
    r.cfr = channel_frequency_response(r.impulse_response, num_subcarriers);
    return r;
}

std::vector<cd> apply_channel(std::span<const cd> signal, const ChannelRealization& ch)
{
    if (ch.impulse_response.empty())
        throw InvalidArgument("apply_channel: empty impulse response");
    std::vector<cd> out(signal.size() + ch.impulse_response.size() - 1, cd{0.0, 0.0});
    if (signal.empty())
        return out;
    const auto& kern = kernels::active();
    for (std::size_t off : ch.tap_offsets)
        kern.caxpy(out.data() + off, ch.impulse_response[off], signal.data(), signal.size());
    return out;
}

std::vector<cd> add_awgn(std::span<const cd> signal, double snr_db, std::uint64_t seed, double reference_power)
{
    std::vector<cd> out(signal.begin(), signal.end());
    if (std::isinf(snr_db) && snr_db > 0.0)
        return out;
    if (!std::isfinite(snr_db))
        throw InvalidArgument("add_awgn: SNR must be finite or +inf");
    if (!(reference_power > 0.0) || !std::isfinite(reference_power))
        throw InvalidArgument("add_awgn: reference power must be positive");
    const double variance = reference_power / std::pow(10.0, snr_db / 10.0);
    Rng rng(seed ^ 0x6e6f697365ULL);
    for (cd& x : out)
        x += rng.complex_normal(variance);
    return out;
}

void write_profile(std::ostream& os, const ChannelProfile& p)
{
    os << "# " << to_string(p.name) << ' ' << p.source << '\n';
    for (const Tap& t : p.taps)
        os << std::setprecision(17) << t.delay_s * 1e9 << ' ' << t.power_db << '\n';
}

std::vector<Tap> read_profile_taps(std::istream& is)
{
    std::vector<Tap> taps;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            header = true;
            continue;
        }
        std::istringstream ls(line);
        double ns, db;
        if (!(ls >> ns >> db))
            throw IoError("read_profile_taps: bad line '" + line + "'");
        taps.push_back({ns * 1e-9, db});
    }
    if (!header)
        throw IoError("read_profile_taps: missing '# name source' header");
    return taps;
}

} // namespace fbmc
