// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fbmc/channel.hpp"
#include "fbmc/lattice.hpp"
#include "fbmc/metrics.hpp"

namespace fbmc {

inline constexpr const char* kToolName = "fbmc-sim";
inline constexpr const char* kToolVersion = "0.1.0";

struct SimConfig {
    std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    std::vector<ChannelModel> channels{ChannelModel::VEH_A};
    std::vector<int> subcarrier_counts{512};
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30};
    std::uint64_t trials = 100;
    int payload_symbols = 40;
    std::uint64_t master_seed = 1;
    double pilot_amplitude = kComponentAmplitude;
    std::string output_path = "results";
    int overlap_factor = 4;
    double rolloff = 1.0;
    double sample_rate = kDefaultSampleRate;
    bool coding = true;
    bool papr_only = false;
    // Stop a cell once this many bit errors are seen (0 disables). Checked
    // only at chunk boundaries so the result does not depend on threading.
    std::uint64_t early_stop_errors = 0;
    unsigned threads = 1;
    bool verbose = false;

    // Throws ConfigError.
    void validate() const;
    // Stable "key=value" lines for everything that affects results.
    std::string canonical() const;
    std::uint64_t hash() const;
};

// Sets one field from its config-file / CLI spelling. Throws ConfigError.
void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value);

// key=value lines, '#' starts a comment.
std::map<std::string, std::string> parse_config_text(std::istream& is);
std::map<std::string, std::string> read_config_file(const std::string& path);

// "0:2:30" (inclusive) or "0,5,10"; "inf" is the noiseless sentinel.
std::vector<double> parse_snr_grid(const std::string& text);

struct TrialSeed {
    std::uint64_t bits = 0;
    std::uint64_t channel = 0;
    std::uint64_t noise = 0;
};

// Depends only on (master, trial), so every scheme, SNR and M sees the
// same draws for a given trial index.
TrialSeed derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial);

struct CellResult {
    MetricRecord metrics;
    std::vector<PaprSample> papr;
};

CellResult run_cell(const SimConfig& cfg, Scheme scheme, ChannelModel channel, int M, double snr_db);

// Transmit side only: PAPR of each frame.
std::vector<PaprSample> run_papr(const SimConfig& cfg, Scheme scheme, int M);

// PAPR thresholds written to the CCDF files.
std::vector<double> default_papr_thresholds_db();

struct SweepResult {
    std::vector<MetricRecord> records;
    std::vector<std::string> files;
};

// Writes <out>/metrics.csv and <out>/ccdf_<scheme>_M<M>.csv.
SweepResult run_sweep(const SimConfig& cfg, std::ostream* log = nullptr);

void write_metrics_csv(std::ostream& os, const SimConfig& cfg, std::span<const MetricRecord> records);
void write_ccdf_csv(std::ostream& os, const SimConfig& cfg, Scheme scheme, int M,
                    std::span<const CcdfPoint> points);

// Locale-independent shortest round-trip formatting.
std::string format_number(double v);

} // namespace fbmc
