#include "smotfs/frame.hpp"

#include <string>

#include "smotfs/errors.hpp"

namespace smotfs {

bool is_power_of_two(std::int64_t v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

int exact_log2(std::int64_t v) noexcept {
    int l = 0;
    while (v > 1) {
        v >>= 1;
        ++l;
    }
    return l;
}

int FrameConfig::antenna_bits() const noexcept { return exact_log2(n_tx); }
int FrameConfig::symbol_bits() const noexcept { return exact_log2(order); }

void FrameConfig::validate() const {
    if (M < 1 || N < 1) throw ConfigError("M and N must be positive");
    if (!is_power_of_two(n_tx)) throw ConfigError("N_t must be a power of two, got " + std::to_string(n_tx));
    if (n_rx < 1) throw ConfigError("N_r must be positive");
    if (!is_power_of_two(order)) throw ConfigError("Q must be a power of two, got " + std::to_string(order));
    if (paths < 1) throw ConfigError("P must be positive");
    if (!(subcarrier_spacing_hz > 0.0) || !(carrier_hz > 0.0)) {
        throw ConfigError("subcarrier spacing and carrier frequency must be positive");
    }
}

TapCandidate TapCandidate::from_antennas(std::span<const int> antennas, int n_tx) {
    TapCandidate t;
    t.positions.resize(antennas.size());
    for (std::size_t m = 0; m < antennas.size(); ++m) {
        t.positions[m] = static_cast<int>(m) * n_tx + antennas[m] + 1;
    }
    return t;
}

std::vector<int> TapCandidate::antennas(int n_tx) const {
    std::vector<int> a(positions.size());
    for (std::size_t m = 0; m < positions.size(); ++m) a[m] = antenna(static_cast<int>(m), n_tx);
    return a;
}

void TapCandidate::validate(const FrameConfig& cfg) const {
    if (bins() != cfg.bins()) {
        throw DimensionError("TAP has " + std::to_string(bins()) + " bins, expected " + std::to_string(cfg.bins()));
    }
    for (int m = 0; m < bins(); ++m) {
        const int p = positions[static_cast<std::size_t>(m)];
        if (p < m * cfg.n_tx + 1 || p > (m + 1) * cfg.n_tx) {
            throw DimensionError("TAP position " + std::to_string(p) + " outside bin " + std::to_string(m));
        }
    }
}

SmFrame make_frame(std::span<const int> tap, std::span<const int> labels, const FrameConfig& cfg,
                   const Constellation& cons) {
    const int md = cfg.bins();
    if (static_cast<int>(tap.size()) != md || static_cast<int>(labels.size()) != md) {
        throw DimensionError("frame needs one antenna and one label per bin");
    }
    SmFrame f;
    f.tap.assign(tap.begin(), tap.end());
    f.labels.assign(labels.begin(), labels.end());
    f.apm.resize(md);
    f.S = CMatrix::Zero(cfg.n_tx, md);
    f.s = CVector::Zero(cfg.tx_length());
    f.x = CVector::Zero(cfg.tx_length());
    f.bits.reserve(static_cast<std::size_t>(cfg.frame_bits()));

    const int l1 = cfg.antenna_bits();
    const int l2 = cfg.symbol_bits();
    for (int m = 0; m < md; ++m) {
        const int nt = tap[static_cast<std::size_t>(m)];
        const int label = labels[static_cast<std::size_t>(m)];
        if (nt < 0 || nt >= cfg.n_tx) throw DimensionError("antenna index out of range");
        if (label < 0 || label >= cons.order()) throw DimensionError("label out of range");
        const Complex a = cons.point(label);
        f.apm[m] = a;
        f.S(nt, m) = a;
        f.s[m * cfg.n_tx + nt] = a;
        f.x[static_cast<Eigen::Index>(shuffle_index(nt, m, cfg))] = a;
        for (int b = l1 - 1; b >= 0; --b) f.bits.push_back(static_cast<std::uint8_t>((nt >> b) & 1));
        for (int b = l2 - 1; b >= 0; --b) f.bits.push_back(static_cast<std::uint8_t>((label >> b) & 1));
    }
    return f;
}

SmFrame map_bits(std::span<const std::uint8_t> bits, const FrameConfig& cfg, const Constellation& cons) {
    if (static_cast<int>(bits.size()) != cfg.frame_bits()) {
        throw DimensionError("payload has " + std::to_string(bits.size()) + " bits, frame carries " +
                             std::to_string(cfg.frame_bits()));
    }
    if (cons.order() != cfg.order) throw DimensionError("constellation order does not match Q");

    const int md = cfg.bins();
    const int l1 = cfg.antenna_bits();
    const int l2 = cfg.symbol_bits();
    std::vector<int> tap(static_cast<std::size_t>(md));
    std::vector<int> labels(static_cast<std::size_t>(md));
    std::size_t k = 0;
    for (int m = 0; m < md; ++m) {
        int nt = 0;
        for (int b = 0; b < l1; ++b) nt = (nt << 1) | (bits[k++] & 1);
        int label = 0;
        for (int b = 0; b < l2; ++b) label = (label << 1) | (bits[k++] & 1);
        tap[static_cast<std::size_t>(m)] = nt;
        labels[static_cast<std::size_t>(m)] = label;
    }
    return make_frame(tap, labels, cfg, cons);
}

Bits demap_frame(std::span<const int> tap, const CVector& apm, const FrameConfig& cfg, const Constellation& cons) {
    const int md = cfg.bins();
    if (static_cast<int>(tap.size()) != md || apm.size() != md) {
        throw DimensionError("demap needs one antenna and one symbol per bin");
    }
    Bits bits;
    bits.reserve(static_cast<std::size_t>(cfg.frame_bits()));
    const int l1 = cfg.antenna_bits();
    const int l2 = cfg.symbol_bits();
    for (int m = 0; m < md; ++m) {
        const int nt = tap[static_cast<std::size_t>(m)];
        if (nt < 0 || nt >= cfg.n_tx) throw DimensionError("antenna index out of range");
        const int label = cons.label_of(apm[m]);
        for (int b = l1 - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((nt >> b) & 1));
        for (int b = l2 - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((label >> b) & 1));
    }
    return bits;
}

std::size_t shuffle_index(int n_t, int m_d, const FrameConfig& cfg) {
    if (n_t < 0 || n_t >= cfg.n_tx || m_d < 0 || m_d >= cfg.bins()) {
        throw DimensionError("shuffle index (" + std::to_string(n_t) + ", " + std::to_string(m_d) + ") out of range");
    }
    return static_cast<std::size_t>(n_t) * static_cast<std::size_t>(cfg.bins()) + static_cast<std::size_t>(m_d);
}

std::vector<int> shuffle_permutation(const FrameConfig& cfg) {
    std::vector<int> perm(static_cast<std::size_t>(cfg.tx_length()));
    for (int m = 0; m < cfg.bins(); ++m) {
        for (int nt = 0; nt < cfg.n_tx; ++nt) {
            perm[static_cast<std::size_t>(m * cfg.n_tx + nt)] = nt * cfg.bins() + m;
        }
    }
    return perm;
}

CVector shuffle(const CVector& s, const FrameConfig& cfg) {
    if (s.size() != cfg.tx_length()) throw DimensionError("s has the wrong length");
    const auto perm = shuffle_permutation(cfg);
    CVector x(s.size());
    for (Eigen::Index j = 0; j < s.size(); ++j) x[perm[static_cast<std::size_t>(j)]] = s[j];
    return x;
}

std::vector<int> tap_selector(const TapCandidate& tap, const FrameConfig& cfg) {
    tap.validate(cfg);
    std::vector<int> cols(tap.positions.size());
    for (std::size_t m = 0; m < cols.size(); ++m) cols[m] = tap.positions[m] - 1;
    return cols;
}

CMatrix select_columns(const CMatrix& c, std::span<const int> columns) {
    CMatrix out(c.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] < 0 || columns[j] >= c.cols()) throw DimensionError("column index out of range");
        out.col(static_cast<Eigen::Index>(j)) = c.col(columns[j]);
    }
    return out;
}

CVector embed(const TapCandidate& tap, const CVector& apm, const FrameConfig& cfg) {
    if (apm.size() != tap.bins()) throw DimensionError("apm and TAP lengths differ");
    CVector s = CVector::Zero(cfg.tx_length());
    for (int m = 0; m < tap.bins(); ++m) s[tap.slot(m)] = apm[m];
    return s;
}

}  // namespace smotfs
