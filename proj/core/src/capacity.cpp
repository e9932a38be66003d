#include "smotfs/capacity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "smotfs/channel.hpp"
#include "smotfs/detectors.hpp"
#include "smotfs/errors.hpp"
#include "smotfs/rng.hpp"

namespace smotfs {

namespace {

/// Columns are C * s_i for every SM frame s_i, choice digits bin 0 first.
CMatrix hypothesis_images(const CMatrix& c, const FrameConfig& cfg, const Constellation& cons, std::uint64_t count) {
    const int choices = cfg.n_tx * cfg.order;
    CMatrix images = CMatrix::Zero(c.rows(), static_cast<Eigen::Index>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t rest = i;
        for (int m = cfg.bins() - 1; m >= 0; --m) {
            const int k = static_cast<int>(rest % static_cast<std::uint64_t>(choices));
            rest /= static_cast<std::uint64_t>(choices);
            const int nt = k / cfg.order;
            images.col(static_cast<Eigen::Index>(i)) += c.col(m * cfg.n_tx + nt) * cons.point(k % cfg.order);
        }
    }
    return images;
}

}  // namespace

double capacity_upper_bound(const FrameConfig& cfg) {
    return std::log2(static_cast<double>(cfg.n_tx) * cfg.order);
}

CapacityEstimate dcmc_capacity(const FrameConfig& cfg, const Constellation& cons, double snr_db,
                               std::uint64_t samples, std::uint64_t seed, const CapacityOptions& options) {
    cfg.validate();
    if (cons.order() != cfg.order) throw ConfigError("constellation order does not match Q");
    if (samples < 1) throw ConfigError("capacity needs at least one sample");
    if (!std::isfinite(snr_db)) throw ConfigError("capacity needs a finite SNR");

    const std::uint64_t count = ml_candidate_count(cfg);
    if (count > options.hypothesis_cap) {
        throw BudgetExceeded("DCMC capacity needs 2^L_b = " + std::to_string(count) + " hypotheses, cap is " +
                             std::to_string(options.hypothesis_cap));
    }
    if (options.fixed_channel &&
        (options.fixed_channel->rows() != cfg.rx_length() || options.fixed_channel->cols() != cfg.tx_length())) {
        throw DimensionError("fixed channel has the wrong shape");
    }

    const double sigma2 = noise_variance_for_snr_db(snr_db, cfg);
    const double sigma = std::sqrt(sigma2);
    const auto hyps = static_cast<Eigen::Index>(count);
    const double frame_bits = cfg.frame_bits();

    std::vector<double> values(static_cast<std::size_t>(samples));
    detail::parallel_for(0, samples, options.workers, [&](std::uint64_t k) {
        Rng rng(derive_seed(seed, {k}));
        const CMatrix c = options.fixed_channel
                              ? *options.fixed_channel
                              : equivalent_matrix(build_mimo_matrix(sample_paths(cfg, rng), cfg), cfg);
        const CMatrix images = hypothesis_images(c, cfg, cons, count);
        const auto rows = images.rows();

        CVector noise(rows);
        RVector psi(hyps);
        double total = 0.0;
        for (Eigen::Index i = 0; i < hyps; ++i) {
            for (Eigen::Index r = 0; r < rows; ++r) noise[r] = sigma * complex_gaussian(rng, 1.0);
            const double noise_energy = noise.squaredNorm();
            double peak = -std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < hyps; ++j) {
                double e = 0.0;
                for (Eigen::Index r = 0; r < rows; ++r) e += std::norm(images(r, i) - images(r, j) + noise[r]);
                psi[j] = (noise_energy - e) / sigma2;
                peak = std::max(peak, psi[j]);
            }
            double acc = 0.0;
            for (Eigen::Index j = 0; j < hyps; ++j) acc += std::exp(psi[j] - peak);
            total += (peak + std::log(acc)) / std::numbers::ln2;
        }
        values[static_cast<std::size_t>(k)] = (frame_bits - total / static_cast<double>(hyps)) / cfg.bins();
    });

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    CapacityEstimate est;
    est.snr_db = snr_db;
    est.c_hat = mean;
    est.samples = samples;
    est.std_err = samples > 1 ? std::sqrt(var / static_cast<double>(samples - 1) / static_cast<double>(samples)) : 0.0;
    return est;
}

}  // namespace smotfs
