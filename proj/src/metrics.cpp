// SPDX-License-Identifier: Apache-2.0
#include "fbmc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fbmc/kernels.hpp"

namespace fbmc {

BitErrorCount ber(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx)
{
    if (tx.size() != rx.size())
        throw InvalidArgument("ber: sequences have different lengths (" + std::to_string(tx.size()) + " vs " +
                              std::to_string(rx.size()) + ")");
    BitErrorCount out;
    out.total = tx.size();
    for (std::size_t i = 0; i < tx.size(); ++i)
        out.errors += ((tx[i] ^ rx[i]) & 1u);
    out.ratio = out.total ? static_cast<double>(out.errors) / static_cast<double>(out.total) : 0.0;
    return out;
}

double nmse(std::span<const cd> h_true, std::span<const cd> h_est)
{
    if (h_true.size() != h_est.size())
        throw InvalidArgument("nmse: vectors have different lengths");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < h_true.size(); ++i) {
        num += std::norm(h_true[i] - h_est[i]);
        den += std::norm(h_true[i]);
    }
    if (!(den > 0.0))
        throw InvalidArgument("nmse: reference channel has zero energy");
    return num / den;
}

PaprSample papr(std::span<const cd> signal)
{
    if (signal.empty())
        throw InvalidArgument("papr: empty signal");
    const auto st = kernels::power_stats(signal);
    if (!(st.sum > 0.0))
        throw InvalidArgument("papr: all-zero signal");
    const double mean = st.sum / static_cast<double>(signal.size());
    // Rounding can push a constant-envelope ratio a hair below 1.
    return {std::max(1.0, st.peak / mean)};
}

std::vector<CcdfPoint> ccdf(std::span<const PaprSample> samples, std::span<const double> thresholds_db)
{
    if (samples.empty())
        throw InvalidArgument("ccdf: no samples");
    std::vector<double> sorted;
    sorted.reserve(samples.size());
    for (const auto& s : samples)
        sorted.push_back(s.papr_linear);
    std::sort(sorted.begin(), sorted.end());
    std::vector<CcdfPoint> out;
    out.reserve(thresholds_db.size());
    const double n = static_cast<double>(sorted.size());
    for (double t : thresholds_db) {
        const double lin = from_db(t);
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), lin);
        out.push_back({t, static_cast<double>(above) / n});
    }
    return out;
}

double papr_at_ccdf(std::span<const PaprSample> samples, double probability)
{
    if (samples.empty())
        throw InvalidArgument("papr_at_ccdf: no samples");
    if (!(probability > 0.0 && probability < 1.0))
        throw InvalidArgument("papr_at_ccdf: probability must lie in (0, 1)");
    std::vector<double> sorted;
    sorted.reserve(samples.size());
    for (const auto& s : samples)
        sorted.push_back(s.papr_linear);
    std::sort(sorted.begin(), sorted.end());
    // At most floor(p n) samples may exceed the threshold.
    const auto allowed = static_cast<std::size_t>(std::floor(probability * static_cast<double>(sorted.size())));
    const std::size_t idx = sorted.size() - 1 - std::min(allowed, sorted.size() - 1);
    return to_db(sorted[idx]);
}

double MetricRecord::ber() const
{
    return bits_total ? static_cast<double>(bit_errors) / static_cast<double>(bits_total) : 0.0;
}

double MetricRecord::nmse_linear() const { return trials ? nmse_sum / static_cast<double>(trials) : 0.0; }

double MetricRecord::nmse_db() const { return to_db(nmse_linear()); }

void MetricRecord::merge(const MetricRecord& other)
{
    trials += other.trials;
    bit_errors += other.bit_errors;
    bits_total += other.bits_total;
    nmse_sum += other.nmse_sum;
}

} // namespace fbmc
