// SPDX-License-Identifier: Apache-2.0
// Batch driver: sweeps scheme x channel x M x SNR and writes CSV files.
#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "fbmc/harness.hpp"
#include "fbmc/kernels.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"FBMC/OQAM preamble channel-estimation simulator"};
    app.set_version_flag("--version", std::string(fbmc::kToolName) + " " + fbmc::kToolVersion);

    std::map<std::string, std::string> cli;
    auto opt = [&](const char* flag, const char* key, const char* help) {
        return app.add_option_function<std::string>(flag, [&cli, key](const std::string& v) { cli[key] = v; }, help);
    };
    opt("--schemes", "schemes", "Comma list: iam-c,e-iam-c,nps,m-iam");
    opt("--channels", "channels", "Comma list: awgn,rayleigh,rician,veh-a,ieee80222,ieee80211");
    opt("--subcarriers", "subcarriers", "Comma list of M values");
    opt("--snr", "snr", "start:step:stop in dB, or a comma list; 'inf' means noiseless");
    opt("--trials", "trials", "Frames per (scheme, channel, M, SNR) cell");
    opt("--seed", "seed", "Master seed");
    opt("--out", "out", "Output directory");
    opt("--threads", "threads", "Worker threads for trials");
    opt("--payload-symbols", "payload_symbols", "QPSK symbols per subcarrier");
    opt("--early-stop", "early_stop_errors", "Stop a cell after this many bit errors (0 = off)");

    std::string config_path;
    bool papr_only = false, no_coding = false, verbose = false;
    app.add_option("--config", config_path, "key=value config file; command-line flags win");
    app.add_flag("--papr-only", papr_only, "Only compute PAPR CCDFs");
    app.add_flag("--no-coding", no_coding, "Send uncoded bits (diagnostic)");
    app.add_flag("--verbose", verbose, "Per-cell progress on stderr");

    CLI11_PARSE(app, argc, argv);

    try {
        fbmc::SimConfig cfg;
        if (!config_path.empty())
            for (const auto& [k, v] : fbmc::read_config_file(config_path))
                fbmc::apply_setting(cfg, k, v);
        for (const auto& [k, v] : cli)
            fbmc::apply_setting(cfg, k, v);
        if (papr_only)
            cfg.papr_only = true;
        if (no_coding)
            cfg.coding = false;
        if (verbose)
            cfg.verbose = true;

        if (cfg.verbose)
            std::cerr << "kernels: " << fbmc::kernels::name(fbmc::kernels::active_isa()) << '\n';
        const auto result = fbmc::run_sweep(cfg, cfg.verbose ? &std::cerr : nullptr);
        for (const auto& f : result.files)
            std::cout << f << '\n';
    } catch (const fbmc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const fbmc::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
