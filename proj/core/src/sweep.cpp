#include "smotfs/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "smotfs/channel.hpp"
#include "smotfs/complexity.hpp"
#include "smotfs/errors.hpp"
#include "smotfs/frame.hpp"
#include "smotfs/rng.hpp"
#include "smotfs/tap_enumeration.hpp"

namespace smotfs {

namespace {

constexpr std::uint64_t kBatch = 1024;

constexpr std::array kKnownKeys = {
    "M",       "N",          "nt",         "nr",          "q",           "paths",         "modulation",
    "detector", "theta",     "td",         "snr-start",   "snr-stop",    "snr-step",      "seed",
    "out",     "samples",    "min-trials", "max-trials",  "target-errors", "workers",     "mld-cap",
    "hypothesis-cap", "subcarrier-spacing", "carrier", "simo",     "mp-iterations",
};

int to_int(std::string_view key, long long v) {
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError("setting '" + std::string(key) + "' out of range");
    }
    return static_cast<int>(v);
}

}  // namespace

DetectorKind parse_detector(std::string_view name) {
    if (name == "mld") return DetectorKind::mld;
    if (name == "doscd") return DetectorKind::doscd;
    if (name == "lmmse") return DetectorKind::lmmse;
    throw ConfigError("unknown detector '" + std::string(name) + "' (expected mld|doscd|lmmse)");
}

std::string_view to_string(DetectorKind d) noexcept {
    switch (d) {
        case DetectorKind::mld: return "mld";
        case DetectorKind::doscd: return "doscd";
        case DetectorKind::lmmse: return "lmmse";
    }
    return "?";
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void SweepConfig::validate() const {
    frame.validate();
    if (snr_db.empty()) throw ConfigError("SNR grid is empty");
    for (std::size_t i = 1; i < snr_db.size(); ++i) {
        if (!(snr_db[i] > snr_db[i - 1])) throw ConfigError("SNR grid must be strictly increasing");
    }
    if (min_trials < 1) throw ConfigError("min-trials must be at least 1");
    if (max_trials < min_trials) throw ConfigError("max-trials must be >= min-trials");
    if (samples < 1) throw ConfigError("samples must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (theta && !(*theta > 0.0 && *theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
    if (depth && (*depth < 1 || *depth > tap_count(frame))) {
        throw ConfigError("td must lie in [1, N_t^M_d = " + std::to_string(tap_count(frame)) + "]");
    }
}

std::uint64_t SweepConfig::doscd_depth() const {
    if (depth) return *depth;
    if (theta) {
        const BigInt td = smotfs::doscd_depth(*theta, frame);
        if (td > std::numeric_limits<std::uint64_t>::max()) throw BudgetExceeded("T_d does not fit in 64 bits");
        return td.convert_to<std::uint64_t>();
    }
    return tap_count(frame);
}

std::string SweepConfig::describe() const {
    std::ostringstream os;
    os << "M=" << frame.M << " N=" << frame.N << " Nt=" << frame.n_tx << " Nr=" << frame.n_rx
       << " Q=" << frame.order << " P=" << frame.paths << " detector=" << to_string(detector);
    if (detector == DetectorKind::doscd) os << " td=" << doscd_depth();
    os << " seed=" << seed;
    return os.str();
}

std::vector<double> snr_grid(double start, double stop, double step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw ConfigError("SNR grid bounds must be finite");
    }
    if (step <= 0.0) throw ConfigError("snr-step must be positive");
    if (stop < start) throw ConfigError("snr-stop must be >= snr-start");
    std::vector<double> grid;
    const double tol = step * 1e-6;
    for (long long i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + tol) break;
        grid.push_back(v);
    }
    return grid;
}

SweepConfig sweep_config_from_settings(const Settings& s) {
    for (const auto& [key, value] : s.entries()) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            throw ConfigError("unknown setting '" + key + "'");
        }
    }
    SweepConfig c;
    if (auto v = s.get_int("M")) c.frame.M = to_int("M", *v);
    if (auto v = s.get_int("N")) c.frame.N = to_int("N", *v);
    if (auto v = s.get_int("nt")) c.frame.n_tx = to_int("nt", *v);
    if (auto v = s.get_int("nr")) c.frame.n_rx = to_int("nr", *v);
    if (auto v = s.get_int("q")) c.frame.order = to_int("q", *v);
    if (auto v = s.get_int("paths")) c.frame.paths = to_int("paths", *v);
    if (auto v = s.get_double("subcarrier-spacing")) c.frame.subcarrier_spacing_hz = *v;
    if (auto v = s.get_double("carrier")) c.frame.carrier_hz = *v;
    if (auto v = s.get("modulation")) c.modulation = parse_modulation(*v);
    if (auto v = s.get("detector")) c.detector = parse_detector(*v);
    if (auto v = s.get_double("theta")) c.theta = *v;
    if (auto v = s.get_u64("td")) c.depth = *v;
    if (c.theta && c.depth) throw ConfigError("give either theta or td, not both");

    const double start = s.get_double("snr-start").value_or(0.0);
    const double stop = s.get_double("snr-stop").value_or(20.0);
    const double step = s.get_double("snr-step").value_or(2.0);
    c.snr_db = snr_grid(start, stop, step);

    if (auto v = s.get_u64("seed")) c.seed = *v;
    if (auto v = s.get("out")) c.out = *v;
    if (auto v = s.get_u64("samples")) c.samples = *v;
    if (auto v = s.get_u64("min-trials")) c.min_trials = *v;
    if (auto v = s.get_u64("max-trials")) c.max_trials = *v;
    if (auto v = s.get_u64("target-errors")) c.target_bit_errors = *v;
    if (auto v = s.get_u64("mld-cap")) c.mld_cap = *v;
    if (auto v = s.get_u64("hypothesis-cap")) c.hypothesis_cap = *v;
    if (auto v = s.get_u64("workers")) {
        if (*v < 1 || *v > 4096) throw ConfigError("workers must lie in [1, 4096]");
        c.workers = static_cast<unsigned>(*v);
    }
    c.validate();
    return c;
}

TrialRecord run_trial(const SweepConfig& sweep, const Constellation& cons, std::size_t point, double snr_db,
                      std::uint64_t trial) {
    const FrameConfig& cfg = sweep.frame;
    Rng rng(derive_seed(sweep.seed, {static_cast<std::uint64_t>(point), trial}));
    const PathSet paths = sample_paths(cfg, rng);
    const Bits bits = random_bits(rng, cfg.frame_bits());
    const SmFrame frame = map_bits(bits, cfg, cons);
    const CMatrix c = equivalent_matrix(build_mimo_matrix(paths, cfg), cfg);
    const double sigma2 = noise_variance_for_snr_db(snr_db, cfg);
    const CVector y = apply_channel(c, frame.s, sigma2, rng);
    const double gamma = snr_per_symbol(sigma2, cfg);

    DetectionResult det;
    switch (sweep.detector) {
        case DetectorKind::mld: det = mld_detect(y, c, cfg, cons, sweep.mld_cap); break;
        case DetectorKind::doscd: det = doscd_detect(y, c, gamma, cfg, cons, sweep.doscd_depth()); break;
        case DetectorKind::lmmse: det = lmmse_detect(y, c, gamma, cfg, cons); break;
    }

    TrialRecord rec;
    rec.snr_db = snr_db;
    rec.trial = trial;
    for (std::size_t i = 0; i < bits.size(); ++i) rec.bit_errors += bits[i] != det.bits[i];
    rec.frame_error = rec.bit_errors > 0;
    rec.residual = det.residual;
    rec.counters = det.counters;
    return rec;
}

double BerPoint::ber() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(bit_errors) / (static_cast<double>(trials) * bits_per_trial);
}

double BerPoint::fer() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(frame_errors) / static_cast<double>(trials);
}

double BerPoint::ber_std_err() const noexcept {
    if (trials < 2) return 0.0;
    const double t = static_cast<double>(trials);
    const double mean = static_cast<double>(bit_errors) / t;
    const double var = std::max(0.0, (sum_sq_bit_errors - t * mean * mean) / (t - 1.0));
    return std::sqrt(var / t) / static_cast<double>(bits_per_trial);
}

BerTable run_ber_sweep(const SweepConfig& sweep) {
    sweep.validate();
    const Constellation cons = Constellation::make(sweep.modulation, sweep.frame.order);
    if (sweep.detector == DetectorKind::mld && ml_candidate_count(sweep.frame) > sweep.mld_cap) {
        throw BudgetExceeded("MLD candidate count exceeds cap " + std::to_string(sweep.mld_cap) + " for " +
                             sweep.describe());
    }

    BerTable table;
    table.detector = sweep.detector;
    table.depth = sweep.detector == DetectorKind::doscd ? sweep.doscd_depth() : 0;
    table.seed = sweep.seed;

    for (std::size_t p = 0; p < sweep.snr_db.size(); ++p) {
        const double snr = sweep.snr_db[p];
        BerPoint pt;
        pt.snr_db = snr;
        pt.bits_per_trial = static_cast<std::uint64_t>(sweep.frame.frame_bits());
        double candidates = 0.0, pinv = 0.0, macs = 0.0, residual = 0.0;

        bool done = false;
        std::uint64_t next = 0;
        std::vector<TrialRecord> batch;
        while (!done) {
            const std::uint64_t size = std::min(kBatch, sweep.max_trials - next);
            batch.assign(static_cast<std::size_t>(size), TrialRecord{});
            try {
                detail::parallel_for(0, size, sweep.workers, [&](std::uint64_t i) {
                    batch[static_cast<std::size_t>(i)] = run_trial(sweep, cons, p, snr, next + i);
                });
            } catch (const BudgetExceeded& e) {
                throw BudgetExceeded(std::string(e.what()) + " [" + sweep.describe() + "]");
            }
            for (const auto& rec : batch) {
                ++pt.trials;
                pt.bit_errors += static_cast<std::uint64_t>(rec.bit_errors);
                pt.sum_sq_bit_errors += static_cast<double>(rec.bit_errors) * rec.bit_errors;
                pt.frame_errors += rec.frame_error ? 1 : 0;
                candidates += static_cast<double>(rec.counters.candidates);
                pinv += static_cast<double>(rec.counters.pseudoinverses);
                macs += rec.counters.complex_macs;
                residual += rec.residual;
                if (pt.trials >= sweep.min_trials &&
                    (pt.bit_errors >= sweep.target_bit_errors || pt.trials >= sweep.max_trials)) {
                    done = true;
                    break;
                }
            }
            next += size;
            if (next >= sweep.max_trials) done = true;
        }
        const double t = static_cast<double>(pt.trials);
        pt.mean_candidates = candidates / t;
        pt.mean_pseudoinverses = pinv / t;
        pt.mean_complex_macs = macs / t;
        pt.mean_residual = residual / t;
        table.points.push_back(pt);
    }
    return table;
}

CapacityTable run_capacity_sweep(const SweepConfig& sweep) {
    sweep.validate();
    const Constellation cons = Constellation::make(sweep.modulation, sweep.frame.order);
    CapacityOptions opts;
    opts.hypothesis_cap = sweep.hypothesis_cap;
    opts.workers = sweep.workers;
    CapacityTable table;
    table.seed = sweep.seed;
    for (const double snr : sweep.snr_db) {
        table.points.push_back(dcmc_capacity(sweep.frame, cons, snr, sweep.samples, sweep.seed, opts));
    }
    return table;
}

SweepConfig simo_config(const SweepConfig& sm) {
    SweepConfig simo = sm;
    simo.frame.order = sm.frame.n_tx * sm.frame.order;
    simo.frame.n_tx = 1;
    simo.detector = DetectorKind::mld;
    simo.theta.reset();
    simo.depth.reset();
    return simo;
}

BerTable simo_baseline(const SweepConfig& simo, const FrameConfig& sm_reference) {
    if (simo.frame.n_tx != 1) throw ConfigError("SIMO baseline needs N_t = 1");
    if (simo.frame.symbol_bits() != sm_reference.bits_per_bin()) {
        throw ConfigError("SIMO baseline rate log2(Q') = " + std::to_string(simo.frame.symbol_bits()) +
                          " does not match the SM rate " + std::to_string(sm_reference.bits_per_bin()));
    }
    if (simo.detector != DetectorKind::mld) throw ConfigError("SIMO baseline uses MLD");
    return run_ber_sweep(simo);
}

void write_ber_csv(std::ostream& out, const BerTable& table) {
    out << "snr_db,trials,bit_errors,ber,frame_errors,fer,detector,td,seed\n";
    for (const auto& p : table.points) {
        out << format_double(p.snr_db) << ',' << p.trials << ',' << p.bit_errors << ',' << format_double(p.ber())
            << ',' << p.frame_errors << ',' << format_double(p.fer()) << ',' << to_string(table.detector) << ','
            << table.depth << ',' << table.seed << '\n';
    }
}

void write_capacity_csv(std::ostream& out, const CapacityTable& table) {
    out << "snr_db,c_hat,std_err,samples,seed\n";
    for (const auto& p : table.points) {
        out << format_double(p.snr_db) << ',' << format_double(p.c_hat) << ',' << format_double(p.std_err) << ','
            << p.samples << ',' << table.seed << '\n';
    }
}

}  // namespace smotfs
