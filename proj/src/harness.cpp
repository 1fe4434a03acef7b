// SPDX-License-Identifier: Apache-2.0
#include "fbmc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "fbmc/coding.hpp"
#include "fbmc/estimation.hpp"
#include "fbmc/prototype.hpp"
#include "fbmc/rng.hpp"
#include "fbmc/transceiver.hpp"

namespace fbmc {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

TrialSeed derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial)
{
    // Counter-based: each stream is mix64 of (master, trial, stream id).
    const std::uint64_t base = mix64(master_seed ^ mix64(trial + 0x5eed));
    return {mix64(base ^ 0x62697473ULL), mix64(base ^ 0x6368616eULL), mix64(base ^ 0x6e6f6973ULL)};
}

namespace {

struct TrialOutcome {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    double nmse = 0.0;
    double papr = 1.0;
};

struct CellContext {
    const SimConfig& cfg;
    Scheme scheme;
    int M;
    double snr_db;
    PrototypeFilter filter;
    ComplexLattice preamble;
    PseudoPilotVector pilots;
    ChannelProfile profile;
    bool transmit_only;
};

CellContext make_context(const SimConfig& cfg, Scheme scheme, ChannelModel channel, int M, double snr_db,
                         bool transmit_only)
{
    auto filter = design_prototype(M, cfg.overlap_factor, cfg.rolloff);
    const auto w = compute_weights(filter);
    auto preamble = build_preamble({scheme, cfg.pilot_amplitude}, M, w);
    auto pilots = compute_pseudo_pilots(preamble, w);
    return {cfg,    scheme, M, snr_db, std::move(filter), std::move(preamble), std::move(pilots),
            make_profile(channel, cfg.sample_rate), transmit_only};
}

std::size_t info_bit_count(const SimConfig& cfg, int M)
{
    const std::size_t cells = static_cast<std::size_t>(M) * static_cast<std::size_t>(cfg.payload_symbols);
    return cfg.coding ? cells - 6 : 2 * cells;
}

TrialOutcome run_trial(const CellContext& ctx, std::uint64_t trial)
{
    const SimConfig& cfg = ctx.cfg;
    const TrialSeed seed = derive_trial_seed(cfg.master_seed, trial);

    Rng bit_rng(seed.bits);
    std::vector<std::uint8_t> info(info_bit_count(cfg, ctx.M));
    for (auto& b : info)
        b = static_cast<std::uint8_t>(bit_rng.bit());
    const auto coded = cfg.coding ? conv_encode(info) : info;

    const auto payload = qpsk_to_oqam(coded, ctx.M, cfg.payload_symbols);
    const auto frame = assemble_frame(ctx.preamble, payload);
    const auto tx = synthesize(frame.symbols, ctx.filter);

    TrialOutcome out;
    out.papr = papr(tx.samples).papr_linear;
    if (ctx.transmit_only)
        return out;

    // Mean payload power per sample: symbol energy over the payload span.
    double payload_energy = 0.0;
    for (double v : payload.raw())
        payload_energy += v * v;
    const double p_ref = payload_energy / (static_cast<double>(payload.columns()) * (ctx.M / 2));

    const auto ch = realize(ctx.profile, seed.channel, ctx.M);
    const auto rx = add_awgn(apply_channel(tx.samples, ch), ctx.snr_db, seed.noise, p_ref);
    const auto afb = analyze(rx, ctx.filter, ctx.M, frame.num_cols());
    const auto est = estimate_cfr(afb, ctx.pilots, ctx.scheme);
    const auto eq = equalize(afb, est.values);
    const auto hard = oqam_demap(eq.values, ctx.M, cfg.payload_symbols);
    const auto decoded = cfg.coding ? viterbi_decode(hard) : hard;

    const auto be = ber(info, decoded);
    out.bit_errors = be.errors;
    out.bits = be.total;
    out.nmse = nmse(ch.cfr, est.values);
    return out;
}

template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn)
{
    if (threads <= 1 || end - begin <= 1) {
        for (std::size_t i = begin; i < end; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= end)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure)
                    failure = std::current_exception();
                next.store(end);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, end - begin));
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

[[noreturn]] void rethrow_with_context(const std::string& where)
{
    try {
        throw;
    } catch (const DegeneratePilotError& e) {
        throw DegeneratePilotError(where + ": " + e.what());
    } catch (const ConsistencyError& e) {
        throw ConsistencyError(where + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(where + ": " + e.what());
    } catch (const IoError& e) {
        throw IoError(where + ": " + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
}

std::string cell_name(Scheme s, ChannelModel c, int M, double snr)
{
    return "cell " + std::string(to_string(s)) + "/" + std::string(to_string(c)) + "/M=" + std::to_string(M) +
           "/snr=" + format_number(snr);
}

// Trials run in chunks; the early-stop test happens between chunks.
constexpr std::uint64_t kChunk = 64;

std::vector<TrialOutcome> run_trials(const CellContext& ctx, bool allow_early_stop)
{
    const SimConfig& cfg = ctx.cfg;
    std::vector<TrialOutcome> out(cfg.trials);
    std::uint64_t done = 0;
    std::uint64_t errors = 0;
    while (done < cfg.trials) {
        const std::uint64_t stop = std::min<std::uint64_t>(cfg.trials, done + kChunk);
        parallel_for(done, stop, cfg.threads, [&](std::size_t t) { out[t] = run_trial(ctx, t); });
        for (std::uint64_t t = done; t < stop; ++t)
            errors += out[t].bit_errors;
        done = stop;
        if (allow_early_stop && cfg.early_stop_errors > 0 && errors >= cfg.early_stop_errors)
            break;
    }
    out.resize(done);
    return out;
}

} // namespace

CellResult run_cell(const SimConfig& cfg, Scheme scheme, ChannelModel channel, int M, double snr_db)
{
    try {
        cfg.validate();
        const auto ctx = make_context(cfg, scheme, channel, M, snr_db, false);
        const auto outcomes = run_trials(ctx, true);
        CellResult r;
        r.metrics.scheme = std::string(to_string(scheme));
        r.metrics.channel = std::string(to_string(channel));
        r.metrics.M = M;
        r.metrics.snr_db = snr_db;
        r.papr.reserve(outcomes.size());
        for (const auto& o : outcomes) {
            r.metrics.trials += 1;
            r.metrics.bit_errors += o.bit_errors;
            r.metrics.bits_total += o.bits;
            r.metrics.nmse_sum += o.nmse;
            r.papr.push_back({o.papr});
        }
        return r;
    } catch (...) {
        rethrow_with_context(cell_name(scheme, channel, M, snr_db));
    }
}

std::vector<PaprSample> run_papr(const SimConfig& cfg, Scheme scheme, int M)
{
    try {
        cfg.validate();
        const auto ctx = make_context(cfg, scheme, ChannelModel::AWGN, M, kNoiselessSnr, true);
        const auto outcomes = run_trials(ctx, false);
        std::vector<PaprSample> out;
        out.reserve(outcomes.size());
        for (const auto& o : outcomes)
            out.push_back({o.papr});
        return out;
    } catch (...) {
        rethrow_with_context("papr " + std::string(to_string(scheme)) + "/M=" + std::to_string(M));
    }
}

std::vector<double> default_papr_thresholds_db()
{
    std::vector<double> t;
    for (int i = 0; i <= 400; ++i)
        t.push_back(i / 10.0);
    return t;
}

namespace {

void write_header(std::ostream& os, const SimConfig& cfg)
{
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash()));
    os << "# " << kToolName << ' ' << kToolVersion << " config_hash=" << hash << '\n';
}

std::string lower(std::string_view s)
{
    std::string out;
    for (char c : s)
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

void write_metrics_csv(std::ostream& os, const SimConfig& cfg, std::span<const MetricRecord> records)
{
    write_header(os, cfg);
    os << "scheme,channel,M,snr_db,trials,bit_errors,bits_total,ber,nmse_db\n";
    for (const auto& r : records)
        os << r.scheme << ',' << r.channel << ',' << r.M << ',' << format_number(r.snr_db) << ',' << r.trials << ','
           << r.bit_errors << ',' << r.bits_total << ',' << format_number(r.ber()) << ','
           << format_number(r.nmse_db()) << '\n';
}

void write_ccdf_csv(std::ostream& os, const SimConfig& cfg, Scheme scheme, int M, std::span<const CcdfPoint> points)
{
    write_header(os, cfg);
    os << "scheme,M,papr0_db,ccdf\n";
    for (const auto& p : points)
        os << to_string(scheme) << ',' << M << ',' << format_number(p.threshold_db) << ','
           << format_number(p.probability) << '\n';
}

SweepResult run_sweep(const SimConfig& cfg, std::ostream* log)
{
    cfg.validate();
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_path);
    std::error_code ec;
    fs::create_directories(dir, ec);
    {
        const fs::path probe = dir / ".write_probe";
        std::ofstream f(probe, std::ios::binary);
        if (ec || !f)
            throw IoError("run_sweep: output directory '" + cfg.output_path + "' is not writable");
        f.close();
        fs::remove(probe, ec);
    }

    SweepResult result;
    auto open = [&](const std::string& name) {
        const fs::path p = dir / name;
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("run_sweep: cannot open '" + p.string() + "' for writing");
        result.files.push_back(p.string());
        return f;
    };

    if (!cfg.papr_only) {
        for (Scheme s : cfg.schemes)
            for (ChannelModel c : cfg.channels)
                for (int M : cfg.subcarrier_counts)
                    for (double snr : cfg.snr_grid_db) {
                        auto cell = run_cell(cfg, s, c, M, snr);
                        if (log)
                            *log << cell_name(s, c, M, snr) << ": " << cell.metrics.bit_errors << '/'
                                 << cell.metrics.bits_total << " errors, nmse " << format_number(cell.metrics.nmse_db())
                                 << " dB\n";
                        result.records.push_back(std::move(cell.metrics));
                    }
        auto f = open("metrics.csv");
        write_metrics_csv(f, cfg, result.records);
        if (!f)
            throw IoError("run_sweep: write to metrics.csv failed");
    }

    const auto thresholds = default_papr_thresholds_db();
    for (Scheme s : cfg.schemes)
        for (int M : cfg.subcarrier_counts) {
            const auto samples = run_papr(cfg, s, M);
            const auto points = ccdf(samples, thresholds);
            auto f = open("ccdf_" + lower(to_string(s)) + "_M" + std::to_string(M) + ".csv");
            write_ccdf_csv(f, cfg, s, M, points);
            if (!f)
                throw IoError("run_sweep: write to CCDF file failed");
            if (log)
                *log << "papr " << to_string(s) << "/M=" << M << ": " << samples.size() << " frames\n";
        }
    return result;
}

} // namespace fbmc
