// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "fbmc/harness.hpp"

namespace fbmc {
namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v)
{
    const std::string t = trim(v);
    if (t == "inf" || t == "+inf")
        return kNoiselessSnr;
    double out = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError(key + ": '" + v + "' is not a number");
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v)
{
    const std::string t = trim(v);
    std::uint64_t out = 0;
    int base = 10;
    const char* first = t.data();
    if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
        base = 16;
        first += 2;
    }
    const auto res = std::from_chars(first, t.data() + t.size(), out, base);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError(key + ": '" + v + "' is not a non-negative integer");
    return out;
}

bool to_bool(const std::string& key, const std::string& v)
{
    std::string t = trim(v);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "1" || t == "true" || t == "yes" || t == "on")
        return true;
    if (t == "0" || t == "false" || t == "no" || t == "off")
        return false;
    throw ConfigError(key + ": '" + v + "' is not a boolean");
}

} // namespace

std::vector<double> parse_snr_grid(const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty())
        return {};
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::string item;
        std::istringstream is(t);
        while (std::getline(is, item, ':'))
            parts.push_back(item);
        if (parts.size() != 3)
            throw ConfigError("snr: expected start:step:stop, got '" + text + "'");
        const double start = to_double("snr", parts[0]);
        const double step = to_double("snr", parts[1]);
        const double stop = to_double("snr", parts[2]);
        if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step) || stop < start)
            throw ConfigError("snr: range '" + text + "' needs finite start <= stop and step > 0");
        std::vector<double> out;
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split_list(t))
        out.push_back(to_double("snr", item));
    return out;
}

void apply_setting(SimConfig& cfg, const std::string& raw_key, const std::string& value)
{
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    try {
        if (key == "schemes") {
            cfg.schemes.clear();
            for (const auto& s : split_list(value))
                cfg.schemes.push_back(parse_scheme(s));
        } else if (key == "channels") {
            cfg.channels.clear();
            for (const auto& s : split_list(value))
                cfg.channels.push_back(parse_channel(s));
        } else if (key == "subcarriers") {
            cfg.subcarrier_counts.clear();
            for (const auto& s : split_list(value))
                cfg.subcarrier_counts.push_back(static_cast<int>(to_u64(key, s)));
        } else if (key == "snr") {
            cfg.snr_grid_db = parse_snr_grid(value);
        } else if (key == "trials") {
            cfg.trials = to_u64(key, value);
        } else if (key == "payload_symbols") {
            cfg.payload_symbols = static_cast<int>(to_u64(key, value));
        } else if (key == "seed") {
            cfg.master_seed = to_u64(key, value);
        } else if (key == "pilot_amplitude") {
            cfg.pilot_amplitude = to_double(key, value);
        } else if (key == "out") {
            cfg.output_path = trim(value);
        } else if (key == "overlap") {
            cfg.overlap_factor = static_cast<int>(to_u64(key, value));
        } else if (key == "rolloff") {
            cfg.rolloff = to_double(key, value);
        } else if (key == "sample_rate") {
            cfg.sample_rate = to_double(key, value);
        } else if (key == "coding") {
            cfg.coding = to_bool(key, value);
        } else if (key == "papr_only") {
            cfg.papr_only = to_bool(key, value);
        } else if (key == "early_stop_errors") {
            cfg.early_stop_errors = to_u64(key, value);
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(to_u64(key, value));
        } else if (key == "verbose") {
            cfg.verbose = to_bool(key, value);
        } else {
            throw ConfigError("unknown setting '" + raw_key + "'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

std::map<std::string, std::string> parse_config_text(std::istream& is)
{
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot read config file '" + path + "'");
    return parse_config_text(f);
}

void SimConfig::validate() const
{
    if (schemes.empty())
        throw ConfigError("config: scheme list is empty");
    if (channels.empty() && !papr_only)
        throw ConfigError("config: channel list is empty");
    if (subcarrier_counts.empty())
        throw ConfigError("config: subcarrier list is empty");
    for (int M : subcarrier_counts)
        if (M < 8 || M % 4 != 0)
            throw ConfigError("config: subcarrier count " + std::to_string(M) + " must be a multiple of 4, >= 8");
    if (snr_grid_db.empty() && !papr_only)
        throw ConfigError("config: SNR grid is empty");
    for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
        if (!(snr_grid_db[i] > snr_grid_db[i - 1]))
            throw ConfigError("config: SNR grid must be strictly increasing");
    for (double s : snr_grid_db)
        if (std::isnan(s) || (std::isinf(s) && s < 0))
            throw ConfigError("config: SNR values must be finite or +inf");
    if (trials < 1)
        throw ConfigError("config: trials must be >= 1");
    if (payload_symbols < 1)
        throw ConfigError("config: payload_symbols must be >= 1");
    if (!(pilot_amplitude > 0.0) || !std::isfinite(pilot_amplitude))
        throw ConfigError("config: pilot_amplitude must be positive");
    if (overlap_factor < 1)
        throw ConfigError("config: overlap must be >= 1");
    if (!(rolloff >= 0.0 && rolloff <= 1.0))
        throw ConfigError("config: rolloff must lie in [0, 1]");
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
        throw ConfigError("config: sample_rate must be positive");
    if (output_path.empty())
        throw ConfigError("config: output path is empty");
}

std::string SimConfig::canonical() const
{
    std::ostringstream os;
    auto list = [&](const char* key, const auto& items, auto fmt) {
        os << key << '=';
        for (std::size_t i = 0; i < items.size(); ++i)
            os << (i ? "," : "") << fmt(items[i]);
        os << '\n';
    };
    list("schemes", schemes, [](Scheme s) { return std::string(to_string(s)); });
    list("channels", channels, [](ChannelModel c) { return std::string(to_string(c)); });
    list("subcarriers", subcarrier_counts, [](int m) { return std::to_string(m); });
    list("snr", snr_grid_db, [](double v) { return format_number(v); });
    os << "trials=" << trials << '\n'
       << "payload_symbols=" << payload_symbols << '\n'
       << "seed=" << master_seed << '\n'
       << "pilot_amplitude=" << format_number(pilot_amplitude) << '\n'
       << "overlap=" << overlap_factor << '\n'
       << "rolloff=" << format_number(rolloff) << '\n'
       << "sample_rate=" << format_number(sample_rate) << '\n'
       << "coding=" << (coding ? 1 : 0) << '\n'
       << "papr_only=" << (papr_only ? 1 : 0) << '\n'
       << "early_stop_errors=" << early_stop_errors << '\n';
    return os.str();
}

std::uint64_t SimConfig::hash() const
{
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace fbmc
