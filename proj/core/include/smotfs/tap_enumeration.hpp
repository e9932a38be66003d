#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smotfs/frame.hpp"
#include "smotfs/frame_config.hpp"
#include "smotfs/types.hpp"

namespace smotfs {

/// N_t^{M_d}, saturating at UINT64_MAX.
std::uint64_t tap_count(const FrameConfig& cfg) noexcept;

/// Lazily yields TAPs in ascending reliability
///   lambda = sum_{m_d} d(slot(m_d))
/// with ties broken by lexicographic position order. Each reliability is
/// summed in bin order, so values equal those of an exhaustive loop.
///
/// Best-first search over per-bin rank vectors. Every nonzero rank vector
/// has one parent (decrement its last nonzero coordinate), children never
/// sort before their parent, so the heap frontier pops the exact ascending
/// order without materializing all N_t^{M_d} patterns.
class TapEnumerator {
public:
    TapEnumerator(const RVector& distances, const FrameConfig& cfg);

    std::optional<TapCandidate> next();
    std::uint64_t emitted() const noexcept { return emitted_; }

private:
    struct Node {
        double lambda;
        std::uint32_t offset;  // into ranks_
    };

    bool before(const Node& a, const Node& b) const;
    double reliability(const std::uint8_t* ranks) const;
    int slot(int bin, int rank) const;
    void push(std::vector<std::uint8_t> ranks);

    int bins_;
    int n_tx_;
    RVector distances_;
    std::vector<int> order_;  // order_[bin * n_tx + r] = slot of rank r in bin
    std::vector<std::uint8_t> ranks_;
    std::vector<Node> heap_;
    std::uint64_t emitted_ = 0;
};

/// First T_d entries of the ascending reliability ordering.
/// Throws DimensionError unless 1 <= T_d <= N_t^{M_d}.
std::vector<TapCandidate> enumerate_taps_best_first(const RVector& distances, const FrameConfig& cfg,
                                                    std::uint64_t depth);

}  // namespace smotfs
