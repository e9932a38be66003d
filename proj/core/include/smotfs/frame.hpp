#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smotfs/constellation.hpp"
#include "smotfs/frame_config.hpp"
#include "smotfs/types.hpp"

namespace smotfs {

/// One transmit-antenna activation pattern. positions are 1-based indices
/// into the column-stacked vector s: bin m_d owns positions
/// [m_d*N_t + 1, (m_d+1)*N_t].
struct TapCandidate {
    std::vector<int> positions;
    double reliability = 0.0;

    static TapCandidate from_antennas(std::span<const int> antennas, int n_tx);

    int bins() const noexcept { return static_cast<int>(positions.size()); }
    /// 0-based index into s for bin m_d.
    int slot(int m_d) const { return positions.at(static_cast<std::size_t>(m_d)) - 1; }
    int antenna(int m_d, int n_tx) const { return slot(m_d) - m_d * n_tx; }
    std::vector<int> antennas(int n_tx) const;

    /// Throws DimensionError if some position leaves its bin's slot range.
    void validate(const FrameConfig& cfg) const;

    bool operator==(const TapCandidate& o) const noexcept { return positions == o.positions; }
};

/// Mapped SM frame. S is N_t x M_d with a single nonzero per column,
/// s = vec(S) and x = Upsilon * s (antenna-major stacking).
struct SmFrame {
    Bits bits;
    std::vector<int> tap;      ///< active antenna per bin
    std::vector<int> labels;   ///< constellation label per bin
    CVector apm;               ///< s_D
    CVector s;
    CVector x;
    CMatrix S;

    TapCandidate tap_candidate(int n_tx) const { return TapCandidate::from_antennas(tap, n_tx); }
};

SmFrame map_bits(std::span<const std::uint8_t> bits, const FrameConfig& cfg, const Constellation& cons);

/// Builds the frame for an explicit (antenna, label) choice per bin.
SmFrame make_frame(std::span<const int> tap, std::span<const int> labels,
                   const FrameConfig& cfg, const Constellation& cons);

Bits demap_frame(std::span<const int> tap, const CVector& apm,
                 const FrameConfig& cfg, const Constellation& cons);

/// Position of antenna n_t's symbol for bin m_d inside x (n_t*M_d + m_d).
std::size_t shuffle_index(int n_t, int m_d, const FrameConfig& cfg);

/// perm[j] = position in x of entry j of s, so x[perm[j]] = s[j].
std::vector<int> shuffle_permutation(const FrameConfig& cfg);

CVector shuffle(const CVector& s, const FrameConfig& cfg);

/// Column indices of C (0-based, bin order) selected by a TAP, i.e. the
/// index form of C_I = C * Upsilon_I.
std::vector<int> tap_selector(const TapCandidate& tap, const FrameConfig& cfg);

CMatrix select_columns(const CMatrix& c, std::span<const int> columns);

/// Sparse embedding: places apm[m_d] at s[slot(m_d)].
CVector embed(const TapCandidate& tap, const CVector& apm, const FrameConfig& cfg);

}  // namespace smotfs
