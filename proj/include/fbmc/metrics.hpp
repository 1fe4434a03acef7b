// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fbmc/common.hpp"

namespace fbmc {

struct BitErrorCount {
    std::uint64_t errors = 0;
    std::uint64_t total = 0;
    double ratio = 0.0;
};

BitErrorCount ber(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx);

// |H - Hhat|^2 / |H|^2 for one realization.
double nmse(std::span<const cd> h_true, std::span<const cd> h_est);

// Peak over mean of |s|^2 across the whole span.
struct PaprSample {
    double papr_linear = 1.0;
};

PaprSample papr(std::span<const cd> signal);

struct CcdfPoint {
    double threshold_db = 0.0;
    double probability = 0.0;
};

// Empirical P(PAPR > threshold).
std::vector<CcdfPoint> ccdf(std::span<const PaprSample> samples, std::span<const double> thresholds_db);

// Smallest threshold t (dB) with P(PAPR > t) <= probability, i.e. the
// empirical (1 - probability) quantile.
double papr_at_ccdf(std::span<const PaprSample> samples, double probability);

struct MetricRecord {
    std::string scheme;
    std::string channel;
    int M = 0;
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_total = 0;
    double nmse_sum = 0.0; // sum of per-trial NMSE, in trial order

    double ber() const;
    double nmse_linear() const;
    double nmse_db() const;

    // Adds counts; nmse_sum is added as-is, so merge in a fixed order when
    // bit-identical output matters.
    void merge(const MetricRecord& other);
};

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

} // namespace fbmc
