#pragma once

#include "smotfs/types.hpp"

namespace smotfs {

// N x M grids, rows indexed by Doppler/time slot, columns by delay/subcarrier.
// Both transforms carry 1/sqrt(M*N) and are unitary.

/// Delay-Doppler to time-frequency.
CMatrix isfft(const CMatrix& dd);

/// Time-frequency to delay-Doppler; exact inverse of isfft.
CMatrix sfft(const CMatrix& tf);

/// Column stacking (linear index m*N + n for an N x M grid).
CVector vec(const CMatrix& grid);
CMatrix unvec(const CVector& v, int rows, int cols);

}  // namespace smotfs
