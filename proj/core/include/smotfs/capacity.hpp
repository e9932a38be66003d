#pragma once

#include <cstdint>
#include <optional>

#include "smotfs/constellation.hpp"
#include "smotfs/frame_config.hpp"
#include "smotfs/types.hpp"

namespace smotfs {

struct CapacityEstimate {
    double snr_db = 0.0;
    double c_hat = 0.0;     ///< bits/s/Hz
    double std_err = 0.0;
    std::uint64_t samples = 0;
};

struct CapacityOptions {
    /// Upper bound on 2^{L_b}.
    std::uint64_t hypothesis_cap = std::uint64_t{1} << 16;
    /// Use this C for every sample instead of drawing fresh channels.
    std::optional<CMatrix> fixed_channel;
    unsigned workers = 1;
};

/// Monte-Carlo DCMC capacity
///   C_D = (1/M_d) (L_b - 2^{-L_b} sum_i E[log2 sum_j exp(Psi_ij)])
///   Psi_ij = (-||C (s_i - s_j) + n||^2 + ||n||^2) / sigma^2
/// with full enumeration over hypotheses. Sample k draws its channel and
/// noise from derive_seed(seed, {k}), so the same seed reuses the same
/// draws at every SNR.
CapacityEstimate dcmc_capacity(const FrameConfig& cfg, const Constellation& cons, double snr_db,
                               std::uint64_t samples, std::uint64_t seed,
                               const CapacityOptions& options = {});

/// log2(N_t Q) = L_b / M_d.
double capacity_upper_bound(const FrameConfig& cfg);

}  // namespace smotfs
