#include "smotfs/transforms.hpp"

#include <cmath>
#include <numbers>

#include "smotfs/errors.hpp"

namespace smotfs {

namespace {

/// Unitary DFT matrix F(a, b) = exp(sign * j2pi ab / n) / sqrt(n).
CMatrix dft_matrix(int n, double sign) {
    CMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            // reduce ab mod n first to keep the twiddle argument small
            const auto r = static_cast<double>((static_cast<long long>(a) * b) % n);
            f(a, b) = std::polar(scale, sign * 2.0 * std::numbers::pi * r / n);
        }
    }
    return f;
}

}  // namespace

// Xtf(n, m) = sum_k sum_l X(k, l) e^{j2pi nk/N} e^{-j2pi ml/M} / sqrt(MN)
//           = (F_N^H X F_M)(n, m) with unitary F.
CMatrix isfft(const CMatrix& dd) {
    if (dd.size() == 0) throw DimensionError("empty grid");
    const int n = static_cast<int>(dd.rows());
    const int m = static_cast<int>(dd.cols());
    return dft_matrix(n, +1.0) * dd * dft_matrix(m, -1.0);
}

CMatrix sfft(const CMatrix& tf) {
    if (tf.size() == 0) throw DimensionError("empty grid");
    const int n = static_cast<int>(tf.rows());
    const int m = static_cast<int>(tf.cols());
    return dft_matrix(n, -1.0) * tf * dft_matrix(m, +1.0);
}

CVector vec(const CMatrix& grid) {
    return Eigen::Map<const CVector>(grid.data(), grid.size());
}

CMatrix unvec(const CVector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols) throw DimensionError("unvec length mismatch");
    return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

}  // namespace smotfs
