#pragma once

#include <cstdint>
#include <string_view>

#include "smotfs/constellation.hpp"
#include "smotfs/frame.hpp"
#include "smotfs/frame_config.hpp"
#include "smotfs/types.hpp"

namespace smotfs {

struct DetectorCounters {
    std::uint64_t candidates = 0;
    std::uint64_t pseudoinverses = 0;
    double complex_macs = 0.0;
};

struct DetectionResult {
    TapCandidate tap;
    CVector apm;
    Bits bits;
    /// ||y - C s_hat|| for the decided frame.
    double residual = 0.0;
    DetectorCounters counters;
    /// Set when no tested TAP had a full-rank subspace.
    bool degraded = false;
};

inline constexpr std::uint64_t kDefaultMldCap = std::uint64_t{1} << 24;

/// (N_t Q)^{M_d}, saturating at UINT64_MAX.
std::uint64_t ml_candidate_count(const FrameConfig& cfg) noexcept;

/// Exhaustive argmin ||y - C s||^2 over every SM frame. Candidates are
/// visited with bin 0 most significant; the first minimizer wins.
/// Throws BudgetExceeded when (N_t Q)^{M_d} > cap.
DetectionResult mld_detect(const CVector& y, const CMatrix& c, const FrameConfig& cfg,
                           const Constellation& cons, std::uint64_t cap = kDefaultMldCap);

/// (C^H C + I / gamma_s)^{-1} C^H y.
CVector lmmse_estimate(const CVector& y, const CMatrix& c, double snr_per_symbol);

/// Nearest alphabet point per entry (zero is not a decision value).
CVector hard_round(const CVector& soft, const Constellation& cons);

/// d(i) = |soft(i) - hard(i)|^2.
RVector distance_vector(const CVector& soft, const CVector& hard);

/// lambda = sum_{m_d} d(positions[m_d] - 1), summed in bin order.
double tap_reliability(const RVector& distances, const TapCandidate& tap);

struct LsEstimate {
    CVector soft;
    CVector symbols;
    double residual = 0.0;
    bool rank_deficient = false;
};

inline constexpr double kRankThreshold = 1e-10;

/// Least squares on the TAP subspace C_I followed by rounding. A
/// rank-deficient C_I gets residual +inf.
LsEstimate ls_estimate(const CVector& y, const CMatrix& c, const TapCandidate& tap,
                       const FrameConfig& cfg, const Constellation& cons);

/// Distance-based ordering subspace check: LMMSE soft estimate, rounding
/// distances, best-first TAP ordering, T_d subspace least-squares checks,
/// minimum residual wins (earliest on ties).
DetectionResult doscd_detect(const CVector& y, const CMatrix& c, double snr_per_symbol,
                             const FrameConfig& cfg, const Constellation& cons, std::uint64_t depth);

/// LMMSE soft estimate followed by a per-bin SM decision: for bin m_d pick
/// (n_t, a) minimizing |s~(n_t) - a|^2 + sum_{other} |s~|^2.
DetectionResult lmmse_detect(const CVector& y, const CMatrix& c, double snr_per_symbol,
                             const FrameConfig& cfg, const Constellation& cons);

}  // namespace smotfs
