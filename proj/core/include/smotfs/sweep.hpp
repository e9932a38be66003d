#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smotfs/capacity.hpp"
#include "smotfs/constellation.hpp"
#include "smotfs/detectors.hpp"
#include "smotfs/frame_config.hpp"
#include "smotfs/settings.hpp"

namespace smotfs {

enum class DetectorKind { mld, doscd, lmmse };

DetectorKind parse_detector(std::string_view name);
std::string_view to_string(DetectorKind d) noexcept;

struct SweepConfig {
    FrameConfig frame;
    Modulation modulation = Modulation::qam;
    DetectorKind detector = DetectorKind::doscd;
    /// DOSCD depth as a fraction of N_t^{M_d}; ignored when `depth` is set.
    std::optional<double> theta;
    std::optional<std::uint64_t> depth;
    std::vector<double> snr_db;

    // Each SNR point runs until min_trials and (target_bit_errors or max_trials).
    std::uint64_t min_trials = 10'000;
    std::uint64_t target_bit_errors = 200;
    std::uint64_t max_trials = 1'000'000;

    std::uint64_t samples = 1'000;  ///< capacity draws per SNR point
    std::uint64_t seed = 1;
    std::uint64_t mld_cap = kDefaultMldCap;
    std::uint64_t hypothesis_cap = std::uint64_t{1} << 16;
    unsigned workers = 1;
    std::string out;

    /// Throws ConfigError.
    void validate() const;
    /// Resolved T_d: depth, else round(theta * N_t^{M_d}), else N_t^{M_d}.
    std::uint64_t doscd_depth() const;
    std::string describe() const;
};

/// start, start+step, ... up to stop inclusive (within step/1e6).
std::vector<double> snr_grid(double start, double stop, double step);

/// Keys mirror the CLI long flags: M, N, nt, nr, q, paths, modulation,
/// detector, theta, td, snr-start, snr-stop, snr-step, seed, out, samples,
/// min-trials, max-trials, target-errors, workers, mld-cap,
/// hypothesis-cap, subcarrier-spacing, carrier. Unknown keys are rejected.
SweepConfig sweep_config_from_settings(const Settings& settings);

struct TrialRecord {
    double snr_db = 0.0;
    std::uint64_t trial = 0;
    int bit_errors = 0;
    bool frame_error = false;
    double residual = 0.0;
    DetectorCounters counters;
};

/// One independent trial: fresh channel, payload and noise drawn from
/// derive_seed(seed, {point, trial}).
TrialRecord run_trial(const SweepConfig& sweep, const Constellation& cons, std::size_t point,
                      double snr_db, std::uint64_t trial);

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bits_per_trial = 0;
    double sum_sq_bit_errors = 0.0;
    double mean_candidates = 0.0;
    double mean_pseudoinverses = 0.0;
    double mean_complex_macs = 0.0;
    double mean_residual = 0.0;

    double ber() const noexcept;
    double fer() const noexcept;
    /// Standard error of ber() from the per-frame error-count variance.
    double ber_std_err() const noexcept;
};

struct BerTable {
    DetectorKind detector = DetectorKind::doscd;
    std::uint64_t depth = 0;  ///< T_d for DOSCD, 0 otherwise
    std::uint64_t seed = 0;
    std::vector<BerPoint> points;
};

/// Output is independent of `workers`: trials are reduced in index order
/// and the stopping rule is evaluated trial by trial.
BerTable run_ber_sweep(const SweepConfig& sweep);

struct CapacityTable {
    std::uint64_t seed = 0;
    std::vector<CapacityEstimate> points;
};

CapacityTable run_capacity_sweep(const SweepConfig& sweep);

/// Rate-matched SIMO-OTFS counterpart of an SM sweep: N_t = 1,
/// Q' = N_t Q, MLD.
SweepConfig simo_config(const SweepConfig& sm);

/// Runs a SIMO sweep; throws ConfigError unless N_t = 1 and
/// log2(Q') equals the reference SM rate.
BerTable simo_baseline(const SweepConfig& simo, const FrameConfig& sm_reference);

/// snr_db,trials,bit_errors,ber,frame_errors,fer,detector,td,seed
void write_ber_csv(std::ostream& out, const BerTable& table);
/// snr_db,c_hat,std_err,samples,seed
void write_capacity_csv(std::ostream& out, const CapacityTable& table);

/// Shortest round-trip decimal form ("inf" for infinities).
std::string format_double(double v);

}  // namespace smotfs
