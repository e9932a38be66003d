#include "smotfs/detectors.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "smotfs/errors.hpp"
#include "smotfs/tap_enumeration.hpp"

namespace smotfs {

namespace {

void check_shapes(const CVector& y, const CMatrix& c, const FrameConfig& cfg) {
    if (c.rows() != cfg.rx_length() || c.cols() != cfg.tx_length()) {
        throw DimensionError("C is " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) + ", expected " +
                             std::to_string(cfg.rx_length()) + "x" + std::to_string(cfg.tx_length()));
    }
    if (y.size() != c.rows()) throw DimensionError("y and C dimensions disagree");
}

DetectionResult finish(const TapCandidate& tap, const CVector& apm, double residual, const FrameConfig& cfg,
                       const Constellation& cons) {
    DetectionResult r;
    r.tap = tap;
    r.apm = apm;
    r.bits = demap_frame(tap.antennas(cfg.n_tx), apm, cfg, cons);
    r.residual = residual;
    return r;
}

}  // namespace

std::uint64_t ml_candidate_count(const FrameConfig& cfg) noexcept {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    const auto base = static_cast<std::uint64_t>(cfg.n_tx) * static_cast<std::uint64_t>(cfg.order);
    std::uint64_t count = 1;
    for (int m = 0; m < cfg.bins(); ++m) {
        if (count > kMax / base) return kMax;
        count *= base;
    }
    return count;
}

DetectionResult mld_detect(const CVector& y, const CMatrix& c, const FrameConfig& cfg, const Constellation& cons,
                           std::uint64_t cap) {
    check_shapes(y, c, cfg);
    const std::uint64_t count = ml_candidate_count(cfg);
    if (count > cap) {
        throw BudgetExceeded("MLD needs (N_t*Q)^M_d = " +
                             (count == std::numeric_limits<std::uint64_t>::max() ? std::string(">2^64")
                                                                                 : std::to_string(count)) +
                             " candidates, cap is " + std::to_string(cap));
    }

    const int md = cfg.bins();
    const int rows = static_cast<int>(c.rows());
    const int choices = cfg.n_tx * cfg.order;

    // contrib[(m*choices + k)*rows + r]: column of C for (bin m, choice k) scaled by its symbol
    std::vector<Complex> contrib(static_cast<std::size_t>(md) * choices * rows);
    for (int m = 0; m < md; ++m) {
        for (int nt = 0; nt < cfg.n_tx; ++nt) {
            for (int q = 0; q < cfg.order; ++q) {
                const Complex a = cons.point(q);
                Complex* dst = &contrib[(static_cast<std::size_t>(m) * choices + nt * cfg.order + q) * rows];
                for (int r = 0; r < rows; ++r) dst[r] = c(r, m * cfg.n_tx + nt) * a;
            }
        }
    }

    // residual stack: level m holds y minus the contributions of bins < m
    std::vector<Complex> residual(static_cast<std::size_t>(md + 1) * rows);
    for (int r = 0; r < rows; ++r) residual[static_cast<std::size_t>(r)] = y[r];
    std::vector<int> choice(static_cast<std::size_t>(md), 0);
    std::vector<int> best_choice(static_cast<std::size_t>(md), 0);
    double best = std::numeric_limits<double>::infinity();

    const int last = md - 1;
    int level = 0;
    while (level >= 0) {
        if (level == last) {
            const Complex* base = &residual[static_cast<std::size_t>(last) * rows];
            for (int k = 0; k < choices; ++k) {
                const Complex* v = &contrib[(static_cast<std::size_t>(last) * choices + k) * rows];
                double obj = 0.0;
                for (int r = 0; r < rows; ++r) obj += std::norm(base[r] - v[r]);
                if (obj < best) {
                    best = obj;
                    choice[static_cast<std::size_t>(last)] = k;
                    best_choice = choice;
                }
            }
            --level;
            if (level >= 0) ++choice[static_cast<std::size_t>(level)];
            continue;
        }
        auto& k = choice[static_cast<std::size_t>(level)];
        if (k == choices) {
            k = 0;
            --level;
            if (level >= 0) ++choice[static_cast<std::size_t>(level)];
            continue;
        }
        const Complex* base = &residual[static_cast<std::size_t>(level) * rows];
        const Complex* v = &contrib[(static_cast<std::size_t>(level) * choices + k) * rows];
        Complex* dst = &residual[static_cast<std::size_t>(level + 1) * rows];
        for (int r = 0; r < rows; ++r) dst[r] = base[r] - v[r];
        ++level;
        choice[static_cast<std::size_t>(level)] = 0;
    }

    std::vector<int> tap(static_cast<std::size_t>(md));
    CVector apm(md);
    for (int m = 0; m < md; ++m) {
        const int k = best_choice[static_cast<std::size_t>(m)];
        tap[static_cast<std::size_t>(m)] = k / cfg.order;
        apm[m] = cons.point(k % cfg.order);
    }
    auto result = finish(TapCandidate::from_antennas(tap, cfg.n_tx), apm, std::sqrt(best), cfg, cons);
    result.counters.candidates = count;
    result.counters.complex_macs = static_cast<double>(count) * rows;
    return result;
}

CVector lmmse_estimate(const CVector& y, const CMatrix& c, double snr_per_symbol) {
    if (y.size() != c.rows()) throw DimensionError("y and C dimensions disagree");
    if (!(snr_per_symbol > 0.0)) throw DimensionError("LMMSE needs a positive SNR");
    CMatrix gram = c.adjoint() * c;
    gram.diagonal().array() += 1.0 / snr_per_symbol;
    const CVector rhs = c.adjoint() * y;
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
    // only reachable for gamma_s = inf with a singular Gram matrix
    return gram.completeOrthogonalDecomposition().solve(rhs);
}

CVector hard_round(const CVector& soft, const Constellation& cons) {
    CVector hard(soft.size());
    for (Eigen::Index i = 0; i < soft.size(); ++i) hard[i] = cons.point(cons.nearest(soft[i]));
    return hard;
}

RVector distance_vector(const CVector& soft, const CVector& hard) {
    if (soft.size() != hard.size()) throw DimensionError("distance vector inputs differ in length");
    RVector d(soft.size());
    for (Eigen::Index i = 0; i < soft.size(); ++i) d[i] = std::norm(soft[i] - hard[i]);
    return d;
}

double tap_reliability(const RVector& distances, const TapCandidate& tap) {
    double lambda = 0.0;
    for (const int p : tap.positions) {
        if (p < 1 || p > distances.size()) throw DimensionError("TAP position outside distance vector");
        lambda += distances[p - 1];
    }
    return lambda;
}

LsEstimate ls_estimate(const CVector& y, const CMatrix& c, const TapCandidate& tap, const FrameConfig& cfg,
                       const Constellation& cons) {
    check_shapes(y, c, cfg);
    const CMatrix sub = select_columns(c, tap_selector(tap, cfg));
    Eigen::ColPivHouseholderQR<CMatrix> qr(sub);
    qr.setThreshold(kRankThreshold);

    LsEstimate est;
    if (qr.rank() < sub.cols()) {
        est.rank_deficient = true;
        est.soft = CVector::Zero(sub.cols());
        est.symbols = hard_round(est.soft, cons);
        est.residual = std::numeric_limits<double>::infinity();
        return est;
    }
    est.soft = qr.solve(y);
    est.symbols = hard_round(est.soft, cons);
    est.residual = (y - sub * est.symbols).norm();
    return est;
}

DetectionResult doscd_detect(const CVector& y, const CMatrix& c, double snr_per_symbol, const FrameConfig& cfg,
                             const Constellation& cons, std::uint64_t depth) {
    check_shapes(y, c, cfg);
    const auto total = tap_count(cfg);
    if (depth < 1 || depth > total) {
        throw DimensionError("T_d = " + std::to_string(depth) + " outside [1, " + std::to_string(total) + "]");
    }

    const CVector soft = lmmse_estimate(y, c, snr_per_symbol);
    const CVector hard = hard_round(soft, cons);
    const RVector d = distance_vector(soft, hard);

    TapEnumerator taps(d, cfg);
    std::optional<TapCandidate> first;
    std::optional<TapCandidate> best_tap;
    LsEstimate best;
    best.residual = std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < depth; ++t) {
        auto tap = taps.next();
        if (!first) first = *tap;
        auto est = ls_estimate(y, c, *tap, cfg, cons);
        if (est.residual < best.residual) {
            best = std::move(est);
            best_tap = std::move(tap);
        }
    }

    const auto rows = static_cast<double>(c.rows());
    const auto md = static_cast<double>(cfg.bins());
    const auto ntx = static_cast<double>(cfg.tx_length());

    DetectionResult result;
    if (best_tap) {
        result = finish(*best_tap, best.symbols, best.residual, cfg, cons);
    } else {
        CVector apm(cfg.bins());
        for (int m = 0; m < cfg.bins(); ++m) apm[m] = hard[first->slot(m)];
        const CMatrix sub = select_columns(c, tap_selector(*first, cfg));
        result = finish(*first, apm, (y - sub * apm).norm(), cfg, cons);
        result.degraded = true;
    }
    result.counters.candidates = depth;
    result.counters.pseudoinverses = depth;
    result.counters.complex_macs =
        ntx * ntx * rows + ntx * ntx * ntx / 3.0 + static_cast<double>(depth) * (2.0 * rows * md * md + rows * md);
    return result;
}

DetectionResult lmmse_detect(const CVector& y, const CMatrix& c, double snr_per_symbol, const FrameConfig& cfg,
                             const Constellation& cons) {
    check_shapes(y, c, cfg);
    const CVector soft = lmmse_estimate(y, c, snr_per_symbol);
    const int md = cfg.bins();
    std::vector<int> tap(static_cast<std::size_t>(md));
    CVector apm(md);
    for (int m = 0; m < md; ++m) {
        double energy = 0.0;
        for (int nt = 0; nt < cfg.n_tx; ++nt) energy += std::norm(soft[m * cfg.n_tx + nt]);
        double best = std::numeric_limits<double>::infinity();
        for (int nt = 0; nt < cfg.n_tx; ++nt) {
            const Complex z = soft[m * cfg.n_tx + nt];
            for (int q = 0; q < cons.order(); ++q) {
                const double metric = energy - std::norm(z) + std::norm(z - cons.point(q));
                if (metric < best) {
                    best = metric;
                    tap[static_cast<std::size_t>(m)] = nt;
                    apm[m] = cons.point(q);
                }
            }
        }
    }
    const auto cand = TapCandidate::from_antennas(tap, cfg.n_tx);
    const CMatrix sub = select_columns(c, tap_selector(cand, cfg));
    auto result = finish(cand, apm, (y - sub * apm).norm(), cfg, cons);
    result.counters.candidates = static_cast<std::uint64_t>(md) * cfg.n_tx * cfg.order;
    return result;
}

}  // namespace smotfs
