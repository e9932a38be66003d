// smotfs: SM-OTFS link-level experiments from the command line.
//
//   smotfs ber          BER/FER sweep for mld | doscd | lmmse
//   smotfs capacity     Monte-Carlo DCMC capacity sweep
//   smotfs channel-dump one sampled channel as plain text
//   smotfs complexity   analytic detector operation counts
//
// Exit codes: 0 success, 2 configuration error, 3 budget exceeded.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "smotfs/channel.hpp"
#include "smotfs/complexity.hpp"
#include "smotfs/errors.hpp"
#include "smotfs/settings.hpp"
#include "smotfs/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

/// Flags are collected as raw strings and merged over the config file.
struct FlagSet {
    std::map<std::string, std::pair<CLI::Option*, std::string>> values;
    std::string config_path;

    void add(CLI::App& app, const std::string& key, const std::string& help) {
        auto& slot = values[key];
        slot.first = app.add_option("--" + key, slot.second, help);
    }

    smotfs::Settings settings() const {
        smotfs::Settings s;
        if (!config_path.empty()) s = smotfs::Settings::load(config_path);
        smotfs::Settings flags;
        for (const auto& [key, slot] : values) {
            if (slot.first->count() > 0) flags.set(key, slot.second);
        }
        s.merge(flags);
        return s;
    }
};

void add_frame_flags(CLI::App& app, FlagSet& f) {
    app.add_option("--config", f.config_path, "flat key = value file; flags override it");
    f.add(app, "M", "subcarriers (delay bins)");
    f.add(app, "N", "time slots (Doppler bins)");
    f.add(app, "nt", "transmit antennas (power of two)");
    f.add(app, "nr", "receive antennas");
    f.add(app, "q", "constellation order (power of two)");
    f.add(app, "paths", "number of propagation paths P");
    f.add(app, "modulation", "qam | psk");
    f.add(app, "subcarrier-spacing", "subcarrier spacing in Hz (metadata only)");
    f.add(app, "carrier", "carrier frequency in Hz (metadata only)");
    f.add(app, "seed", "master seed");
    f.add(app, "out", "output path (stdout when omitted)");
    f.add(app, "workers", "worker threads");
}

void add_snr_flags(CLI::App& app, FlagSet& f) {
    f.add(app, "snr-start", "first SNR point in dB");
    f.add(app, "snr-stop", "last SNR point in dB");
    f.add(app, "snr-step", "SNR step in dB");
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw smotfs::ConfigError("cannot write '" + path + "'");
    out << text;
}

int run_ber(const FlagSet& f) {
    auto settings = f.settings();
    const bool use_simo = settings.get_bool("simo").value_or(false);
    auto sweep = smotfs::sweep_config_from_settings(settings);
    std::ostringstream csv;
    if (use_simo) {
        const auto reference = sweep.frame;
        smotfs::write_ber_csv(csv, smotfs::simo_baseline(smotfs::simo_config(sweep), reference));
    } else {
        smotfs::write_ber_csv(csv, smotfs::run_ber_sweep(sweep));
    }
    emit(sweep.out, csv.str());
    return 0;
}

int run_capacity(const FlagSet& f) {
    const auto sweep = smotfs::sweep_config_from_settings(f.settings());
    std::ostringstream csv;
    smotfs::write_capacity_csv(csv, smotfs::run_capacity_sweep(sweep));
    emit(sweep.out, csv.str());
    return 0;
}

int run_channel_dump(const FlagSet& f) {
    const auto sweep = smotfs::sweep_config_from_settings(f.settings());
    const auto paths = smotfs::sample_paths(sweep.frame, sweep.seed);
    std::ostringstream text;
    smotfs::write_channel_dump(text, paths, sweep.frame, sweep.seed);
    emit(sweep.out, text.str());
    return 0;
}

int run_complexity(const FlagSet& f, const std::string& detector) {
    auto settings = f.settings();
    std::optional<std::string> kind_name = detector.empty() ? settings.get("detector") : std::optional(detector);
    // complexity understands mpd, which the sweep parser does not
    smotfs::Settings frame_only;
    for (const auto& [k, v] : settings.entries()) {
        if (k != "detector") frame_only.set(k, v);
    }
    const auto sweep = smotfs::sweep_config_from_settings(frame_only);
    const auto mp_iterations = settings.get_u64("mp-iterations").value_or(10);

    smotfs::BigInt depth = smotfs::max_tap_count(sweep.frame);
    if (sweep.depth) depth = smotfs::BigInt(*sweep.depth);
    else if (sweep.theta) depth = smotfs::doscd_depth(*sweep.theta, sweep.frame);

    std::vector<smotfs::ComplexityKind> kinds;
    if (kind_name) kinds.push_back(smotfs::parse_complexity_kind(*kind_name));
    else kinds = {smotfs::ComplexityKind::mld, smotfs::ComplexityKind::doscd, smotfs::ComplexityKind::mpd};

    std::ostringstream csv;
    csv << "detector,iterations,operations,log10_operations\n";
    for (const auto kind : kinds) {
        smotfs::BigInt iterations = 0;
        if (kind == smotfs::ComplexityKind::doscd) iterations = depth;
        if (kind == smotfs::ComplexityKind::mpd) iterations = mp_iterations;
        const auto ops = smotfs::complexity_model(kind, sweep.frame, iterations);
        csv << smotfs::to_string(kind) << ',' << iterations.str() << ',' << smotfs::to_exact_string(ops) << ','
            << smotfs::format_double(smotfs::log10_of(ops)) << '\n';
    }
    emit(sweep.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SM-OTFS link-level simulator"};
    app.require_subcommand(1);

    FlagSet ber_flags;
    auto* ber = app.add_subcommand("ber", "BER/FER-vs-SNR sweep");
    add_frame_flags(*ber, ber_flags);
    add_snr_flags(*ber, ber_flags);
    ber_flags.add(*ber, "detector", "mld | doscd | lmmse");
    ber_flags.add(*ber, "theta", "DOSCD depth as a fraction of N_t^M_d");
    ber_flags.add(*ber, "td", "DOSCD depth T_d");
    ber_flags.add(*ber, "min-trials", "minimum frames per SNR point");
    ber_flags.add(*ber, "max-trials", "maximum frames per SNR point");
    ber_flags.add(*ber, "target-errors", "bit errors that end an SNR point");
    ber_flags.add(*ber, "mld-cap", "largest MLD candidate count allowed");
    ber_flags.add(*ber, "simo", "run the rate-matched SIMO-OTFS MLD baseline instead");

    FlagSet cap_flags;
    auto* capacity = app.add_subcommand("capacity", "DCMC capacity sweep");
    add_frame_flags(*capacity, cap_flags);
    add_snr_flags(*capacity, cap_flags);
    cap_flags.add(*capacity, "samples", "channel/noise draws per SNR point");
    cap_flags.add(*capacity, "hypothesis-cap", "largest 2^L_b allowed");

    FlagSet dump_flags;
    auto* dump = app.add_subcommand("channel-dump", "write one sampled channel realization");
    add_frame_flags(*dump, dump_flags);

    FlagSet cx_flags;
    std::string cx_detector;
    auto* complexity = app.add_subcommand("complexity", "analytic detector complexity");
    add_frame_flags(*complexity, cx_flags);
    complexity->add_option("--detector", cx_detector, "mld | doscd | mpd (all when omitted)");
    cx_flags.add(*complexity, "theta", "DOSCD depth as a fraction of N_t^M_d");
    cx_flags.add(*complexity, "td", "DOSCD depth T_d");
    cx_flags.add(*complexity, "mp-iterations", "message-passing iterations T_MP");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (ber->parsed()) return run_ber(ber_flags);
        if (capacity->parsed()) return run_capacity(cap_flags);
        if (dump->parsed()) return run_channel_dump(dump_flags);
        if (complexity->parsed()) return run_complexity(cx_flags, cx_detector);
    } catch (const smotfs::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
