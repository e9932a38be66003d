#include "smotfs/constellation.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "smotfs/errors.hpp"
#include "smotfs/frame_config.hpp"

namespace smotfs {

namespace {

int gray_decode(int g) {
    int b = 0;
    for (; g != 0; g >>= 1) b ^= g;
    return b;
}

void normalize(std::vector<Complex>& pts) {
    double energy = 0.0;
    for (const auto& p : pts) energy += std::norm(p);
    energy /= static_cast<double>(pts.size());
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& p : pts) p *= scale;
}

void check_order(int order) {
    if (order < 1 || !is_power_of_two(order)) {
        throw ConfigError("constellation order must be a power of two, got " + std::to_string(order));
    }
}

}  // namespace

Modulation parse_modulation(std::string_view name) {
    if (name == "qam") return Modulation::qam;
    if (name == "psk") return Modulation::psk;
    throw ConfigError("unknown modulation '" + std::string(name) + "' (expected qam|psk)");
}

std::string_view to_string(Modulation m) noexcept {
    return m == Modulation::qam ? "qam" : "psk";
}

Constellation::Constellation(Modulation m, std::vector<Complex> points)
    : modulation_(m), points_(std::move(points)), bits_(exact_log2(static_cast<std::int64_t>(points_.size()))) {}

Constellation Constellation::qam(int order) {
    check_order(order);
    if (order == 1) return Constellation(Modulation::qam, {Complex{1.0, 0.0}});

    const int bits = exact_log2(order);
    const int bits_i = (bits + 1) / 2;
    const int bits_q = bits / 2;
    const int side_i = 1 << bits_i;
    const int side_q = 1 << bits_q;

    std::vector<Complex> pts(static_cast<std::size_t>(order));
    for (int label = 0; label < order; ++label) {
        const int gi = label >> bits_q;
        const int gq = label & (side_q - 1);
        const double re = 2.0 * gray_decode(gi) - (side_i - 1);
        const double im = bits_q == 0 ? 0.0 : 2.0 * gray_decode(gq) - (side_q - 1);
        pts[static_cast<std::size_t>(label)] = {re, im};
    }
    normalize(pts);
    return Constellation(Modulation::qam, std::move(pts));
}

Constellation Constellation::psk(int order) {
    check_order(order);
    std::vector<Complex> pts(static_cast<std::size_t>(order));
    for (int p = 0; p < order; ++p) {
        const int label = p ^ (p >> 1);
        pts[static_cast<std::size_t>(label)] = std::polar(1.0, 2.0 * std::numbers::pi * p / order);
    }
    return Constellation(Modulation::psk, std::move(pts));
}

Constellation Constellation::make(Modulation m, int order) {
    return m == Modulation::qam ? qam(order) : psk(order);
}

int Constellation::label_of(const Complex& symbol) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (std::abs(symbol - points_[i]) <= 1e-9) return static_cast<int>(i);
    }
    throw InvalidSymbolError("symbol (" + std::to_string(symbol.real()) + ", " + std::to_string(symbol.imag()) +
                             ") is not in the constellation");
}

int Constellation::nearest(const Complex& z) const noexcept {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double d = std::norm(z - points_[i]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

double Constellation::min_energy() const noexcept {
    double e = std::numeric_limits<double>::infinity();
    for (const auto& p : points_) e = std::min(e, std::norm(p));
    return e;
}

}  // namespace smotfs
