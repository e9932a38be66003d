#include "smotfs/channel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "smotfs/errors.hpp"
#include "smotfs/frame.hpp"

namespace smotfs {

namespace {

int mod(int a, int n) {
    const int r = a % n;
    return r < 0 ? r + n : r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index p = 0; p < a.rows(); ++p) {
        for (Eigen::Index q = 0; q < a.cols(); ++q) {
            out.block(p * b.rows(), q * b.cols(), b.rows(), b.cols()) = a(p, q) * b;
        }
    }
    return out;
}

Complex path_phase(const Path& p, const FrameConfig& cfg) {
    const double arg = -2.0 * std::numbers::pi * p.delay * p.doppler / cfg.bins();
    return std::polar(1.0, arg);
}

std::string format_full(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace

void PathSet::validate(const FrameConfig& cfg) const {
    if (paths.empty()) throw DimensionError("path set is empty");
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& p = paths[i];
        if (p.delay < 0 || p.delay > cfg.max_delay()) {
            throw DimensionError("path " + std::to_string(i + 1) + " delay " + std::to_string(p.delay) +
                                 " outside [0, " + std::to_string(cfg.max_delay()) + "]");
        }
        if (std::abs(p.doppler) > cfg.max_doppler()) {
            throw DimensionError("path " + std::to_string(i + 1) + " Doppler " + std::to_string(p.doppler) +
                                 " outside [-" + std::to_string(cfg.max_doppler()) + ", " +
                                 std::to_string(cfg.max_doppler()) + "]");
        }
        if (p.gains.rows() != cfg.n_rx || p.gains.cols() != cfg.n_tx) {
            throw DimensionError("path gains must be N_r x N_t");
        }
        if (!p.gains.allFinite()) throw DimensionError("path gains must be finite");
    }
}

PathSet sample_paths(const FrameConfig& cfg, Rng& rng) {
    std::uniform_int_distribution<int> delay(0, cfg.max_delay());
    std::uniform_int_distribution<int> doppler(-cfg.max_doppler(), cfg.max_doppler());
    const double variance = 1.0 / cfg.paths;

    PathSet set;
    set.paths.resize(static_cast<std::size_t>(cfg.paths));
    for (auto& p : set.paths) {
        p.delay = delay(rng);
        p.doppler = doppler(rng);
        p.gains.resize(cfg.n_rx, cfg.n_tx);
        for (int r = 0; r < cfg.n_rx; ++r) {
            for (int t = 0; t < cfg.n_tx; ++t) p.gains(r, t) = complex_gaussian(rng, variance);
        }
    }
    return set;
}

PathSet sample_paths(const FrameConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    return sample_paths(cfg, rng);
}

CMatrix cyclic_shift(int size, int shift) {
    CMatrix s = CMatrix::Zero(size, size);
    for (int p = 0; p < size; ++p) s(p, mod(p - shift, size)) = 1.0;
    return s;
}

CMatrix build_link_matrix(const PathSet& paths, int n_r, int n_t, const FrameConfig& cfg) {
    paths.validate(cfg);
    if (n_r < 0 || n_r >= cfg.n_rx || n_t < 0 || n_t >= cfg.n_tx) throw DimensionError("link index out of range");
    CMatrix h = CMatrix::Zero(cfg.bins(), cfg.bins());
    for (const auto& p : paths.paths) {
        const Complex g = p.gains(n_r, n_t) * path_phase(p, cfg);
        h += kron(cyclic_shift(cfg.M, p.delay), cyclic_shift(cfg.N, mod(p.doppler, cfg.N)) * g);
    }
    return h;
}

CMatrix build_mimo_matrix(const PathSet& paths, const FrameConfig& cfg) {
    const int md = cfg.bins();
    CMatrix h(cfg.rx_length(), cfg.tx_length());
    for (int r = 0; r < cfg.n_rx; ++r) {
        for (int t = 0; t < cfg.n_tx; ++t) h.block(r * md, t * md, md, md) = build_link_matrix(paths, r, t, cfg);
    }
    return h;
}

CMatrix equivalent_matrix(const CMatrix& h, const FrameConfig& cfg) {
    if (h.rows() != cfg.rx_length() || h.cols() != cfg.tx_length()) throw DimensionError("H has the wrong shape");
    const auto perm = shuffle_permutation(cfg);
    CMatrix c(h.rows(), h.cols());
    for (Eigen::Index j = 0; j < h.cols(); ++j) c.col(j) = h.col(perm[static_cast<std::size_t>(j)]);
    return c;
}

SparseChannel::SparseChannel(const PathSet& paths, const FrameConfig& cfg)
    : bins_(cfg.bins()), n_tx_(cfg.n_tx), n_rx_(cfg.n_rx), links_(static_cast<std::size_t>(cfg.n_rx * cfg.n_tx)) {
    paths.validate(cfg);
    for (int r = 0; r < n_rx_; ++r) {
        for (int t = 0; t < n_tx_; ++t) {
            auto& entries = links_[static_cast<std::size_t>(r * n_tx_ + t)];
            for (int m = 0; m < cfg.M; ++m) {
                for (int n = 0; n < cfg.N; ++n) {
                    const int row = m * cfg.N + n;
                    const auto first = entries.size();
                    for (const auto& p : paths.paths) {
                        const int col = mod(m - p.delay, cfg.M) * cfg.N + mod(n - p.doppler, cfg.N);
                        const Complex v = p.gains(r, t) * path_phase(p, cfg);
                        auto it = std::find_if(entries.begin() + static_cast<std::ptrdiff_t>(first), entries.end(),
                                               [col](const Entry& e) { return e.col == col; });
                        if (it != entries.end()) {
                            it->value += v;
                        } else {
                            entries.push_back({row, col, v});
                        }
                    }
                }
            }
        }
    }
}

CVector SparseChannel::apply(const CVector& x) const {
    if (x.size() != static_cast<Eigen::Index>(bins_) * n_tx_) throw DimensionError("x has the wrong length");
    CVector y = CVector::Zero(static_cast<Eigen::Index>(bins_) * n_rx_);
    for (int r = 0; r < n_rx_; ++r) {
        for (int t = 0; t < n_tx_; ++t) {
            for (const auto& e : link(r, t)) y[r * bins_ + e.row] += e.value * x[t * bins_ + e.col];
        }
    }
    return y;
}

CVector SparseChannel::apply_equivalent(const CVector& s) const {
    if (s.size() != static_cast<Eigen::Index>(bins_) * n_tx_) throw DimensionError("s has the wrong length");
    CVector y = CVector::Zero(static_cast<Eigen::Index>(bins_) * n_rx_);
    for (int r = 0; r < n_rx_; ++r) {
        for (int t = 0; t < n_tx_; ++t) {
            for (const auto& e : link(r, t)) y[r * bins_ + e.row] += e.value * s[e.col * n_tx_ + t];
        }
    }
    return y;
}

CMatrix SparseChannel::to_dense() const {
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(bins_) * n_rx_, static_cast<Eigen::Index>(bins_) * n_tx_);
    for (int r = 0; r < n_rx_; ++r) {
        for (int t = 0; t < n_tx_; ++t) {
            for (const auto& e : link(r, t)) h(r * bins_ + e.row, t * bins_ + e.col) += e.value;
        }
    }
    return h;
}

ChannelRealization ChannelRealization::make(PathSet paths, const FrameConfig& cfg, double noise_variance) {
    if (noise_variance < 0.0) throw DimensionError("noise variance must be nonnegative");
    ChannelRealization ch;
    ch.H = build_mimo_matrix(paths, cfg);
    ch.C = equivalent_matrix(ch.H, cfg);
    ch.paths = std::move(paths);
    ch.noise_variance = noise_variance;
    return ch;
}

double ChannelRealization::snr_per_symbol(const FrameConfig& cfg) const {
    return smotfs::snr_per_symbol(noise_variance, cfg);
}

double noise_variance_for_snr_db(double snr_db, const FrameConfig& cfg) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    return 1.0 / (cfg.n_tx * std::pow(10.0, snr_db / 10.0));
}

double snr_per_symbol(double noise_variance, const FrameConfig& cfg) {
    if (noise_variance == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (cfg.n_tx * noise_variance);
}

CVector apply_channel(const CMatrix& c, const CVector& s, double noise_variance, Rng& rng) {
    if (c.cols() != s.size()) throw DimensionError("C and s dimensions disagree");
    if (noise_variance < 0.0 || std::isnan(noise_variance)) throw DimensionError("noise variance must be nonnegative");
    CVector y = c * s;
    // unit draws scaled afterwards, so one seed gives the same noise shape at every SNR
    const double sd = std::sqrt(noise_variance);
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += sd * complex_gaussian(rng, 1.0);
    return y;
}

CVector apply_channel(const CMatrix& c, const CVector& s, double noise_variance, std::uint64_t seed) {
    Rng rng(seed);
    return apply_channel(c, s, noise_variance, rng);
}

void write_channel_dump(std::ostream& out, const PathSet& paths, const FrameConfig& cfg, std::uint64_t seed) {
    paths.validate(cfg);
    out << "M " << cfg.M << " N " << cfg.N << " Nt " << cfg.n_tx << " Nr " << cfg.n_rx << " P "
        << paths.paths.size() << " seed " << seed << '\n';
    for (std::size_t i = 0; i < paths.paths.size(); ++i) {
        const auto& p = paths.paths[i];
        for (int r = 0; r < cfg.n_rx; ++r) {
            for (int t = 0; t < cfg.n_tx; ++t) {
                out << i + 1 << ' ' << r << ' ' << t << ' ' << p.delay << ' ' << p.doppler << ' '
                    << format_full(p.gains(r, t).real()) << ' ' << format_full(p.gains(r, t).imag()) << '\n';
            }
        }
    }
}

ChannelDump read_channel_dump(std::istream& in) {
    ChannelDump dump;
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("channel dump: missing header");
    std::istringstream hs(header);
    std::string key;
    int seen = 0;
    int path_count = 0;
    while (hs >> key) {
        if (key == "M") hs >> dump.cfg.M;
        else if (key == "N") hs >> dump.cfg.N;
        else if (key == "Nt") hs >> dump.cfg.n_tx;
        else if (key == "Nr") hs >> dump.cfg.n_rx;
        else if (key == "P") hs >> path_count;
        else if (key == "seed") hs >> dump.seed;
        else throw ConfigError("channel dump: unknown header field '" + key + "'");
        if (!hs) throw ConfigError("channel dump: malformed header");
        ++seen;
    }
    if (seen != 6) throw ConfigError("channel dump: header needs M N Nt Nr P seed");
    dump.cfg.paths = path_count;
    dump.cfg.validate();

    dump.paths.paths.resize(static_cast<std::size_t>(path_count));
    std::vector<int> filled(static_cast<std::size_t>(path_count), 0);
    for (auto& p : dump.paths.paths) p.gains = CMatrix::Zero(dump.cfg.n_rx, dump.cfg.n_tx);

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, r = 0, t = 0, l = 0, k = 0;
        double re = 0.0, im = 0.0;
        if (!(ls >> i >> r >> t >> l >> k >> re >> im)) throw ConfigError("channel dump: malformed line '" + line + "'");
        if (i < 1 || i > path_count || r < 0 || r >= dump.cfg.n_rx || t < 0 || t >= dump.cfg.n_tx) {
            throw ConfigError("channel dump: index out of range in '" + line + "'");
        }
        auto& p = dump.paths.paths[static_cast<std::size_t>(i - 1)];
        auto& count = filled[static_cast<std::size_t>(i - 1)];
        if (count == 0) {
            p.delay = l;
            p.doppler = k;
        } else if (p.delay != l || p.doppler != k) {
            throw ConfigError("channel dump: path " + std::to_string(i) + " has inconsistent shifts");
        }
        p.gains(r, t) = {re, im};
        ++count;
    }
    for (int c : filled) {
        if (c != dump.cfg.n_rx * dump.cfg.n_tx) throw ConfigError("channel dump: incomplete link list");
    }
    dump.paths.validate(dump.cfg);
    return dump;
}

}  // namespace smotfs
