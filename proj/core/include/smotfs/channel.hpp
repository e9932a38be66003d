#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "smotfs/frame_config.hpp"
#include "smotfs/rng.hpp"
#include "smotfs/types.hpp"

namespace smotfs {

/// One on-grid propagation path: integer delay l (0..M-1), signed integer
/// Doppler k (-(N-1)..N-1) and the N_r x N_t matrix of per-link gains.
struct Path {
    int delay = 0;
    int doppler = 0;
    CMatrix gains;
};

struct PathSet {
    std::vector<Path> paths;

    /// Throws DimensionError on out-of-range shifts or wrong gain shape.
    void validate(const FrameConfig& cfg) const;
};

/// Uniform integer shifts and i.i.d. CN(0, 1/P) gains.
PathSet sample_paths(const FrameConfig& cfg, Rng& rng);
PathSet sample_paths(const FrameConfig& cfg, std::uint64_t seed);

/// M x M cyclic shift: entry (p, q) is 1 iff q = (p - shift) mod size.
CMatrix cyclic_shift(int size, int shift);

/// H_{n_r,n_t} = sum_i I_M(l_i) kron [I_N(k_i) h_i exp(-j2pi l_i k_i / M_d)].
CMatrix build_link_matrix(const PathSet& paths, int n_r, int n_t, const FrameConfig& cfg);

/// (M_d N_r) x (M_d N_t) block matrix of link matrices.
CMatrix build_mimo_matrix(const PathSet& paths, const FrameConfig& cfg);

/// C = H * Upsilon as a column permutation of H.
CMatrix equivalent_matrix(const CMatrix& h, const FrameConfig& cfg);

/// Index-list form of every link block; each row has at most P entries.
class SparseChannel {
public:
    struct Entry {
        int row;
        int col;
        Complex value;
    };

    SparseChannel(const PathSet& paths, const FrameConfig& cfg);

    /// y = H x.
    CVector apply(const CVector& x) const;
    /// y = C s, with s in column-stacked order.
    CVector apply_equivalent(const CVector& s) const;

    const std::vector<Entry>& link(int n_r, int n_t) const { return links_[static_cast<std::size_t>(n_r * n_tx_ + n_t)]; }
    CMatrix to_dense() const;

private:
    int bins_;
    int n_tx_;
    int n_rx_;
    std::vector<std::vector<Entry>> links_;
};

/// Sampled channel and its materialized DD matrices.
struct ChannelRealization {
    PathSet paths;
    CMatrix H;
    CMatrix C;
    double noise_variance = 0.0;

    static ChannelRealization make(PathSet paths, const FrameConfig& cfg, double noise_variance);

    /// gamma_s = 1 / (N_t sigma^2).
    double snr_per_symbol(const FrameConfig& cfg) const;
};

/// sigma^2 for a per-symbol SNR in dB: 1 / (N_t * 10^(snr/10)).
double noise_variance_for_snr_db(double snr_db, const FrameConfig& cfg);
double snr_per_symbol(double noise_variance, const FrameConfig& cfg);

/// y = C s + n, n ~ CN(0, sigma^2 I).
CVector apply_channel(const CMatrix& c, const CVector& s, double noise_variance, Rng& rng);
CVector apply_channel(const CMatrix& c, const CVector& s, double noise_variance, std::uint64_t seed);

/// Plain-text channel dump:
///   M <M> N <N> Nt <Nt> Nr <Nr> P <P> seed <seed>
///   i n_r n_t l_i k_i re im      (one line per path per link)
void write_channel_dump(std::ostream& out, const PathSet& paths, const FrameConfig& cfg, std::uint64_t seed);

struct ChannelDump {
    FrameConfig cfg;
    std::uint64_t seed = 0;
    PathSet paths;
};

ChannelDump read_channel_dump(std::istream& in);

}  // namespace smotfs
