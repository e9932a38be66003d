#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "smotfs/frame_config.hpp"

namespace smotfs {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class ComplexityKind { mld, doscd, mpd };

ComplexityKind parse_complexity_kind(std::string_view name);
std::string_view to_string(ComplexityKind k) noexcept;

/// Analytic operation counts:
///   MLD   (N_t Q)^{M_d}
///   DOSCD T_d M_d
///   MPD   M^3 N^3 (N_r^2 N_t + N_t^2 N_r) N_t Q T_MP / N_t^2
/// `iterations` is T_d for DOSCD, T_MP for MPD and ignored for MLD.
BigRational complexity_model(ComplexityKind kind, const FrameConfig& cfg, const BigInt& iterations = 0);

/// T_max = N_t^{M_d}.
BigInt max_tap_count(const FrameConfig& cfg);

/// T_d = round(theta * T_max), halves rounded up; theta must lie in (0, 1].
BigInt doscd_depth(double theta, const FrameConfig& cfg);

double log10_of(const BigRational& v);

/// Integer digits when the value is whole, otherwise "num/den".
std::string to_exact_string(const BigRational& v);

}  // namespace smotfs
