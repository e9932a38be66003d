#pragma once

#include <cstddef>
#include <cstdint>

namespace smotfs {

/// Dimensioning of one SM-OTFS link. The grid is N Doppler bins (time slots)
/// by M delay bins (subcarriers); every one of the M*N DD bins carries one
/// active transmit antenna and one APM symbol.
struct FrameConfig {
    int M = 2;          ///< subcarriers / delay bins
    int N = 2;          ///< time slots / Doppler bins
    int n_tx = 2;       ///< transmit antennas, power of two
    int n_rx = 2;       ///< receive antennas
    int order = 4;      ///< constellation order Q, power of two
    int paths = 2;      ///< multipath count P
    double subcarrier_spacing_hz = 15e3;
    double carrier_hz = 4e9;

    int bins() const noexcept { return M * N; }
    int antenna_bits() const noexcept;
    int symbol_bits() const noexcept;
    int bits_per_bin() const noexcept { return antenna_bits() + symbol_bits(); }
    int frame_bits() const noexcept { return bins() * bits_per_bin(); }
    /// Spectral efficiency log2(N_t * Q) in bits/s/Hz.
    double rate() const noexcept { return bits_per_bin(); }

    int max_delay() const noexcept { return M - 1; }
    int max_doppler() const noexcept { return N - 1; }

    /// Length of s and x, N_t * M_d.
    int tx_length() const noexcept { return n_tx * bins(); }
    /// Length of y, N_r * M_d.
    int rx_length() const noexcept { return n_rx * bins(); }

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    bool operator==(const FrameConfig&) const = default;
};

bool is_power_of_two(std::int64_t v) noexcept;
int exact_log2(std::int64_t v) noexcept;

}  // namespace smotfs
