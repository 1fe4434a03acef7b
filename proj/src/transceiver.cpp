// SPDX-License-Identifier: Apache-2.0
#include "fbmc/transceiver.hpp"

#include <iomanip>
#include <ostream>

#include "dft.hpp"
#include "fbmc/kernels.hpp"

namespace fbmc {

std::size_t FrameLayout::sample_count() const
{
    if (num_cols <= 0)
        return 0;
    return static_cast<std::size_t>(num_cols - 1) * static_cast<std::size_t>(num_subcarriers / 2) + filter_length;
}

namespace {

constexpr cd kQuarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

cd j_pow(long k) { return kQuarter[((k % 4) + 4) % 4]; }

// e^{j pi k / M}, reducing k modulo 2M first so large arguments stay exact.
cd half_turn_fraction(long k, long M)
{
    const long r = ((k % (2 * M)) + 2 * M) % (2 * M);
    return std::polar(1.0, kPi * static_cast<double>(r) / static_cast<double>(M));
}

void check_filter(const PrototypeFilter& g, int M, const char* who)
{
    if (g.num_subcarriers != M || g.coefficients.size() != static_cast<std::size_t>(M) * g.overlap_factor)
        throw InvalidArgument(std::string(who) + ": grid has " + std::to_string(M) +
                              " subcarriers but the prototype was designed for " +
                              std::to_string(g.num_subcarriers));
    if (M < 2 || M % 2 != 0)
        throw InvalidArgument(std::string(who) + ": M must be even");
}

// j^m e^{-j pi m (L-1) / M}
std::vector<cd> carrier_phase(int M, std::size_t len)
{
    const long D = static_cast<long>(len) - 1;
    std::vector<cd> ph(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m)
        ph[static_cast<std::size_t>(m)] = j_pow(m) * half_turn_fraction(-static_cast<long>(m) * D, M);
    return ph;
}

// g(l) e^{j 2 pi m (l - (L-1)/2) / M}
std::vector<cd> modulated_pulse(const PrototypeFilter& g, int m)
{
    const long M = g.num_subcarriers;
    const long D = static_cast<long>(g.length()) - 1;
    std::vector<cd> out(g.length());
    for (std::size_t l = 0; l < g.length(); ++l)
        out[l] = g.coefficients[l] * half_turn_fraction(static_cast<long>(m) * (2 * static_cast<long>(l) - D), M);
    return out;
}

FrameLayout layout_for(int M, int N, const PrototypeFilter& g) { return {M, N, g.length()}; }

} // namespace

TimeSignal synthesize(const ComplexLattice& grid, const PrototypeFilter& g)
{
    const int M = grid.subcarriers();
    const int N = grid.columns();
    check_filter(g, M, "synthesize");
    TimeSignal out;
    out.layout = layout_for(M, N, g);
    out.samples.assign(out.layout.sample_count(), cd{0.0, 0.0});
    if (N == 0)
        return out;

    const auto ph = carrier_phase(M, g.length());
    const auto& kern = kernels::active();
    const std::size_t Mu = static_cast<std::size_t>(M);
    std::vector<cd> block(Mu);
    for (int n = 0; n < N; ++n) {
        const auto col = grid.column(n);
        const cd jn = j_pow(n);
        bool any = false;
        for (std::size_t m = 0; m < Mu; ++m) {
            block[m] = col[m] * ph[m] * jn;
            any = any || col[m] != cd{0.0, 0.0};
        }
        if (!any)
            continue;
        detail::dft_inverse(block);
        cd* dst = out.samples.data() + static_cast<std::size_t>(n) * (Mu / 2);
        for (int k = 0; k < g.overlap_factor; ++k) {
            const std::size_t off = static_cast<std::size_t>(k) * Mu;
            kern.real_weighted_accumulate(dst + off, g.coefficients.data() + off, block.data(), Mu);
        }
    }
    return out;
}

TimeSignal synthesize_direct(const ComplexLattice& grid, const PrototypeFilter& g)
{
    const int M = grid.subcarriers();
    const int N = grid.columns();
    check_filter(g, M, "synthesize_direct");
    TimeSignal out;
    out.layout = layout_for(M, N, g);
    out.samples.assign(out.layout.sample_count(), cd{0.0, 0.0});
    const std::size_t len = g.length();
    for (int m = 0; m < M; ++m) {
        const auto pulse = modulated_pulse(g, m);
        for (int n = 0; n < N; ++n) {
            const cd d = grid(m, n);
            if (d == cd{0.0, 0.0})
                continue;
            const cd a = d * j_pow(static_cast<long>(m) + n);
            cd* dst = out.samples.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(M / 2);
            for (std::size_t l = 0; l < len; ++l)
                dst[l] += a * pulse[l];
        }
    }
    return out;
}

namespace {

void check_analysis_input(std::span<const cd> signal, const PrototypeFilter& g, int M, int N, const char* who)
{
    check_filter(g, M, who);
    if (N < 0)
        throw InvalidArgument(std::string(who) + ": N must be non-negative");
    const std::size_t need = layout_for(M, N, g).sample_count();
    if (signal.size() < need)
        throw InvalidArgument(std::string(who) + ": signal has " + std::to_string(signal.size()) +
                              " samples, " + std::to_string(need) + " needed for " + std::to_string(N) +
                              " half-symbols");
}

} // namespace

AfbOutput analyze(std::span<const cd> signal, const PrototypeFilter& g, int M, int N)
{
    check_analysis_input(signal, g, M, N, "analyze");
    AfbOutput out(M, N);
    const auto ph = carrier_phase(M, g.length());
    const auto& kern = kernels::active();
    const std::size_t Mu = static_cast<std::size_t>(M);
    std::vector<cd> block(Mu);
    for (int q = 0; q < N; ++q) {
        std::fill(block.begin(), block.end(), cd{0.0, 0.0});
        const cd* src = signal.data() + static_cast<std::size_t>(q) * (Mu / 2);
        for (int k = 0; k < g.overlap_factor; ++k) {
            const std::size_t off = static_cast<std::size_t>(k) * Mu;
            kern.real_weighted_accumulate(block.data(), g.coefficients.data() + off, src + off, Mu);
        }
        detail::dft_forward(block);
        const cd jq = std::conj(j_pow(q));
        auto col = out.column(q);
        for (std::size_t p = 0; p < Mu; ++p)
            col[p] = block[p] * std::conj(ph[p]) * jq;
    }
    return out;
}

AfbOutput analyze_direct(std::span<const cd> signal, const PrototypeFilter& g, int M, int N)
{
    check_analysis_input(signal, g, M, N, "analyze_direct");
    AfbOutput out(M, N);
    const std::size_t len = g.length();
    for (int p = 0; p < M; ++p) {
        const auto pulse = modulated_pulse(g, p);
        for (int q = 0; q < N; ++q) {
            const cd* src = signal.data() + static_cast<std::size_t>(q) * static_cast<std::size_t>(M / 2);
            cd acc{0.0, 0.0};
            for (std::size_t l = 0; l < len; ++l)
                acc += src[l] * std::conj(pulse[l]);
            out(p, q) = acc * std::conj(j_pow(static_cast<long>(p) + q));
        }
    }
    return out;
}

void write_signal_csv(std::ostream& os, std::span<const cd> samples)
{
    os << "index,re,im\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        os << i << ',' << std::setprecision(17) << samples[i].real() << ',' << samples[i].imag() << '\n';
}

} // namespace fbmc
