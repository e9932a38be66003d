#include "smotfs/complexity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "smotfs/errors.hpp"

namespace smotfs {

ComplexityKind parse_complexity_kind(std::string_view name) {
    if (name == "mld") return ComplexityKind::mld;
    if (name == "doscd") return ComplexityKind::doscd;
    if (name == "mpd") return ComplexityKind::mpd;
    throw ConfigError("unknown detector '" + std::string(name) + "' (expected mld|doscd|mpd)");
}

std::string_view to_string(ComplexityKind k) noexcept {
    switch (k) {
        case ComplexityKind::mld: return "mld";
        case ComplexityKind::doscd: return "doscd";
        case ComplexityKind::mpd: return "mpd";
    }
    return "?";
}

BigInt max_tap_count(const FrameConfig& cfg) {
    return boost::multiprecision::pow(BigInt(cfg.n_tx), static_cast<unsigned>(cfg.bins()));
}

BigRational complexity_model(ComplexityKind kind, const FrameConfig& cfg, const BigInt& iterations) {
    cfg.validate();
    const BigInt m(cfg.M), n(cfg.N), nt(cfg.n_tx), nr(cfg.n_rx), q(cfg.order);
    switch (kind) {
        case ComplexityKind::mld:
            return BigRational(boost::multiprecision::pow(nt * q, static_cast<unsigned>(cfg.bins())));
        case ComplexityKind::doscd:
            if (iterations < 1) throw ConfigError("DOSCD complexity needs T_d >= 1");
            return BigRational(iterations * cfg.bins());
        case ComplexityKind::mpd: {
            if (iterations < 1) throw ConfigError("MPD complexity needs T_MP >= 1");
            const BigInt num = m * m * m * n * n * n * (nr * nr * nt + nt * nt * nr) * nt * q * iterations;
            return BigRational(num, nt * nt);
        }
    }
    throw ConfigError("unknown complexity kind");
}

BigInt doscd_depth(double theta, const FrameConfig& cfg) {
    if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in (0, 1], got " + std::to_string(theta));
    // a double is an exact dyadic rational, so this is exact
    int exponent = 0;
    const double mantissa = std::frexp(theta, &exponent);
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    BigRational t(BigInt(scaled) * max_tap_count(cfg));
    const int shift = 53 - exponent;
    t /= BigRational(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(shift)));
    // round half up
    const BigRational shifted = t + BigRational(1, 2);
    BigInt depth = boost::multiprecision::numerator(shifted) / boost::multiprecision::denominator(shifted);
    return depth < 1 ? BigInt(1) : depth;
}

double log10_of(const BigRational& v) {
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    auto log10_int = [](const BigInt& x) {
        const std::string digits = x.str();
        const std::size_t keep = std::min<std::size_t>(digits.size(), 17);
        const double lead = std::stod(digits.substr(0, keep));
        return std::log10(lead) + static_cast<double>(digits.size() - keep);
    };
    return log10_int(num) - log10_int(den);
}

std::string to_exact_string(const BigRational& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace smotfs
