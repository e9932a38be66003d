#include "smotfs/tap_enumeration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "smotfs/errors.hpp"

namespace smotfs {

std::uint64_t tap_count(const FrameConfig& cfg) noexcept {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t count = 1;
    const auto base = static_cast<std::uint64_t>(cfg.n_tx);
    for (int m = 0; m < cfg.bins(); ++m) {
        if (count > kMax / base) return kMax;
        count *= base;
    }
    return count;
}

TapEnumerator::TapEnumerator(const RVector& distances, const FrameConfig& cfg)
    : bins_(cfg.bins()), n_tx_(cfg.n_tx), distances_(distances), order_(static_cast<std::size_t>(cfg.tx_length())) {
    if (distances.size() != cfg.tx_length()) {
        throw DimensionError("distance vector has length " + std::to_string(distances.size()) + ", expected " +
                             std::to_string(cfg.tx_length()));
    }
    if (n_tx_ > 256) throw DimensionError("TAP enumeration supports at most 256 transmit antennas");

    for (int b = 0; b < bins_; ++b) {
        auto first = order_.begin() + static_cast<std::ptrdiff_t>(b) * n_tx_;
        std::iota(first, first + n_tx_, b * n_tx_);
        std::sort(first, first + n_tx_, [this](int a, int c) {
            return distances_[a] < distances_[c] || (distances_[a] == distances_[c] && a < c);
        });
    }
    push(std::vector<std::uint8_t>(static_cast<std::size_t>(bins_), 0));
}

int TapEnumerator::slot(int bin, int rank) const {
    return order_[static_cast<std::size_t>(bin * n_tx_ + rank)];
}

double TapEnumerator::reliability(const std::uint8_t* ranks) const {
    double lambda = 0.0;
    for (int b = 0; b < bins_; ++b) lambda += distances_[slot(b, ranks[b])];
    return lambda;
}

bool TapEnumerator::before(const Node& a, const Node& b) const {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    const std::uint8_t* ra = ranks_.data() + a.offset;
    const std::uint8_t* rb = ranks_.data() + b.offset;
    for (int m = 0; m < bins_; ++m) {
        const int sa = slot(m, ra[m]);
        const int sb = slot(m, rb[m]);
        if (sa != sb) return sa < sb;
    }
    return false;
}

void TapEnumerator::push(std::vector<std::uint8_t> ranks) {
    const auto offset = static_cast<std::uint32_t>(ranks_.size());
    ranks_.insert(ranks_.end(), ranks.begin(), ranks.end());
    heap_.push_back({reliability(ranks_.data() + offset), offset});
    std::push_heap(heap_.begin(), heap_.end(), [this](const Node& x, const Node& y) { return before(y, x); });
}

std::optional<TapCandidate> TapEnumerator::next() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), [this](const Node& x, const Node& y) { return before(y, x); });
    const Node top = heap_.back();
    heap_.pop_back();

    std::vector<std::uint8_t> ranks(ranks_.begin() + top.offset, ranks_.begin() + top.offset + bins_);
    TapCandidate tap;
    tap.reliability = top.lambda;
    tap.positions.resize(static_cast<std::size_t>(bins_));
    int last_nonzero = 0;
    for (int b = 0; b < bins_; ++b) {
        tap.positions[static_cast<std::size_t>(b)] = slot(b, ranks[static_cast<std::size_t>(b)]) + 1;
        if (ranks[static_cast<std::size_t>(b)] != 0) last_nonzero = b;
    }

    // children: bump any coordinate at or after the last nonzero one
    for (int b = last_nonzero; b < bins_; ++b) {
        if (ranks[static_cast<std::size_t>(b)] + 1 < n_tx_) {
            auto child = ranks;
            ++child[static_cast<std::size_t>(b)];
            push(std::move(child));
        }
    }
    ++emitted_;
    return tap;
}

std::vector<TapCandidate> enumerate_taps_best_first(const RVector& distances, const FrameConfig& cfg,
                                                    std::uint64_t depth) {
    const auto total = tap_count(cfg);
    if (depth < 1 || depth > total) {
        throw DimensionError("T_d = " + std::to_string(depth) + " outside [1, " + std::to_string(total) + "]");
    }
    TapEnumerator e(distances, cfg);
    std::vector<TapCandidate> out;
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(depth, 1u << 20)));
    for (std::uint64_t t = 0; t < depth; ++t) out.push_back(*e.next());
    return out;
}

}  // namespace smotfs
