#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smotfs/types.hpp"

namespace smotfs {

enum class Modulation { qam, psk };

Modulation parse_modulation(std::string_view name);
std::string_view to_string(Modulation m) noexcept;

/// Unit-average-energy Q-ary alphabet. Points are stored in label order:
/// point(i) is the symbol whose L_2-bit label, read MSB first, equals i.
/// Labels are Gray coded.
class Constellation {
public:
    /// Gray square QAM for even log2(Q), rectangular 2^ceil x 2^floor
    /// grid otherwise (Q = 2 is BPSK).
    static Constellation qam(int order);
    static Constellation psk(int order);
    static Constellation make(Modulation m, int order);

    int order() const noexcept { return static_cast<int>(points_.size()); }
    int bits_per_symbol() const noexcept { return bits_; }
    Modulation modulation() const noexcept { return modulation_; }

    std::span<const Complex> points() const noexcept { return points_; }
    const Complex& point(int label) const { return points_.at(static_cast<std::size_t>(label)); }

    /// Label of an alphabet member; tolerates 1e-9 of rounding.
    /// Throws InvalidSymbolError for anything else.
    int label_of(const Complex& symbol) const;

    /// Label of the nearest point; ties go to the lowest label.
    int nearest(const Complex& z) const noexcept;

    double min_energy() const noexcept;

private:
    Constellation(Modulation m, std::vector<Complex> points);

    Modulation modulation_;
    std::vector<Complex> points_;
    int bits_;
};

}  // namespace smotfs
