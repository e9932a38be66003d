#include <gtest/gtest.h>

#include "oracles.hpp"
#include "smotfs/errors.hpp"
#include "smotfs/transforms.hpp"

using namespace smotfs;

TEST(Isfft, DeltaBecomesConstant) {
    for (auto [n, m] : {std::pair{2, 2}, {4, 8}, {3, 5}}) {
        CMatrix x = CMatrix::Zero(n, m);
        x(0, 0) = 1.0;
        const CMatrix tf = isfft(x);
        const double level = 1.0 / std::sqrt(static_cast<double>(n * m));
        EXPECT_LE((tf.array() - Complex(level)).abs().maxCoeff(), 1e-15);
        const CMatrix back = sfft(CMatrix::Constant(n, m, level));
        EXPECT_LE((back - x).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Isfft, MatchesDirectDoubleSum) {
    for (auto [n, m] : {std::pair{2, 2}, {4, 8}, {3, 5}, {1, 6}}) {
        for (int trial = 0; trial < 20; ++trial) {
            const CMatrix x = CMatrix::Random(n, m);
            EXPECT_LE((isfft(x) - oracle::isfft_direct(x)).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LE((sfft(x) - oracle::sfft_direct(x)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Isfft, UnitaryAndInvertible) {
    for (auto [n, m] : {std::pair{2, 2}, {4, 8}, {16, 16}}) {
        for (int trial = 0; trial < 20; ++trial) {
            const CMatrix x = CMatrix::Random(n, m);
            const CMatrix tf = isfft(x);
            EXPECT_NEAR(tf.norm(), x.norm(), 1e-12);
            EXPECT_LE((sfft(tf) - x).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Vec, ColumnStackingIsDopplerFastest) {
    CMatrix g(2, 3);
    g << 1, 2, 3, 4, 5, 6;
    const CVector v = vec(g);
    // linear index m*N + n
    EXPECT_EQ(v[1 * 2 + 0], Complex(2));
    EXPECT_EQ(v[2 * 2 + 1], Complex(6));
    EXPECT_EQ(unvec(v, 2, 3), g);
    EXPECT_THROW(unvec(v, 4, 4), DimensionError);
    EXPECT_THROW(isfft(CMatrix()), DimensionError);
}
