#include <gtest/gtest.h>

#include "oracles.hpp"
#include "smotfs/channel.hpp"
#include "smotfs/detectors.hpp"
#include "smotfs/errors.hpp"

using namespace smotfs;

namespace {

FrameConfig config(int m, int n, int nt, int nr, int q) {
    FrameConfig c;
    c.M = m;
    c.N = n;
    c.n_tx = nt;
    c.n_rx = nr;
    c.order = q;
    c.paths = 2;
    return c;
}

struct Instance {
    CMatrix C;
    SmFrame frame;
    CVector y;
    double gamma;
};

Instance draw(const FrameConfig& cfg, const Constellation& cons, double snr_db, Rng& rng) {
    Instance in;
    in.C = equivalent_matrix(build_mimo_matrix(sample_paths(cfg, rng), cfg), cfg);
    in.frame = map_bits(random_bits(rng, cfg.frame_bits()), cfg, cons);
    const double var = noise_variance_for_snr_db(snr_db, cfg);
    in.y = apply_channel(in.C, in.frame.s, var, rng);
    in.gamma = var > 0.0 ? snr_per_symbol(var, cfg) : 1e12;
    return in;
}

}  // namespace

TEST(Mld, HandEnumeratedTinyCase) {
    const auto cfg = config(1, 1, 2, 1, 2);
    const auto cons = Constellation::qam(2);
    CMatrix c(1, 2);
    c << Complex(1.0, 0.0), Complex(0.0, 2.0);
    CVector y(1);
    y << Complex(0.2, 1.7);
    // candidates: ant0 +-1 -> y -+ 1, ant1 +-1 -> y -+ 2j
    double best = 1e9;
    int best_ant = -1;
    int best_label = -1;
    for (int ant = 0; ant < 2; ++ant) {
        for (int lab = 0; lab < 2; ++lab) {
            const double r = std::norm(y[0] - c(0, ant) * cons.point(lab));
            if (r < best) {
                best = r;
                best_ant = ant;
                best_label = lab;
            }
        }
    }
    const auto res = mld_detect(y, c, cfg, cons);
    EXPECT_EQ(res.tap.antenna(0, 2), best_ant);
    EXPECT_EQ(res.apm[0], cons.point(best_label));
    EXPECT_NEAR(res.residual, std::sqrt(best), 1e-14);
    EXPECT_EQ(res.counters.candidates, 4U);
}

TEST(Mld, CounterAndBudget) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(1);
    const auto in = draw(cfg, cons, 10.0, rng);
    EXPECT_EQ(mld_detect(in.y, in.C, cfg, cons).counters.candidates, 4096U);
    EXPECT_EQ(ml_candidate_count(cfg), 4096U);
    EXPECT_THROW(mld_detect(in.y, in.C, cfg, cons, 4095), BudgetExceeded);
}

TEST(Mld, NoiselessRecoveryAndScaleInvariance) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = draw(cfg, cons, std::numeric_limits<double>::infinity(), rng);
        const auto res = mld_detect(in.y, in.C, cfg, cons);
        EXPECT_EQ(res.bits, in.frame.bits);
        EXPECT_LE(res.residual, 1e-12);
        const auto noisy = draw(cfg, cons, 6.0, rng);
        const auto a = mld_detect(noisy.y, noisy.C, cfg, cons);
        const auto b = mld_detect(noisy.y * 3.5, noisy.C * 3.5, cfg, cons);
        EXPECT_EQ(a.bits, b.bits);
    }
}

TEST(Lmmse, ClosedForms) {
    const CVector y = CVector::Random(6);
    EXPECT_LE((lmmse_estimate(y, CMatrix::Identity(6, 6), 3.0) - y * 0.75).cwiseAbs().maxCoeff(), 1e-15);
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(CMatrix::Random(6, 6)).householderQ();
    const CVector s = CVector::Random(6);
    EXPECT_LE((lmmse_estimate(q * s, q, 1e12) - s).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Lmmse, MatchesGaussianEliminationOracle) {
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix c = CMatrix::Random(8, 6);
        const CVector y = CVector::Random(8);
        const double gamma = 0.1 + trial;
        const CMatrix a = c.adjoint() * c + CMatrix::Identity(6, 6) / gamma;
        const CVector expected = oracle::gauss_solve(a, c.adjoint() * y);
        ASSERT_LE((lmmse_estimate(y, c, gamma) - expected).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(HardRound, NearestPointAndTies) {
    const auto cons = Constellation::qam(16);
    Rng rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    CVector soft(500);
    for (auto& v : soft) v = Complex(g(rng), g(rng));
    const CVector hard = hard_round(soft, cons);
    for (Eigen::Index i = 0; i < soft.size(); ++i) {
        double best = 1e9;
        for (const auto& p : cons.points()) best = std::min(best, std::norm(soft[i] - p));
        ASSERT_EQ(std::norm(soft[i] - hard[i]), best);
    }
    const CVector zero = hard_round(CVector::Zero(1), Constellation::qam(4));
    EXPECT_EQ(zero[0], Constellation::qam(4).point(0));
}

TEST(DistanceVector, AndReliability) {
    CVector soft(4);
    soft << Complex(0.1, 0), Complex(1, 1), Complex(0, 0), Complex(2, 0);
    CVector hard(4);
    hard << Complex(0, 0), Complex(1, 1), Complex(0, 1), Complex(1, 0);
    const RVector d = distance_vector(soft, hard);
    EXPECT_NEAR(d[0], 0.01, 1e-15);
    EXPECT_EQ(d[1], 0.0);
    EXPECT_EQ(d[2], 1.0);
    EXPECT_EQ(d[3], 1.0);
    TapCandidate t;
    t.positions = {2, 3};
    EXPECT_EQ(tap_reliability(d, t), 1.0);
}

TEST(LsEstimate, NoiselessExactAndOracle) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto in = draw(cfg, cons, std::numeric_limits<double>::infinity(), rng);
        const auto tap = in.frame.tap_candidate(cfg.n_tx);
        const auto est = ls_estimate(in.y, in.C, tap, cfg, cons);
        ASSERT_FALSE(est.rank_deficient);
        ASSERT_LE((est.symbols - in.frame.apm).cwiseAbs().maxCoeff(), 0.0);
        ASSERT_LE(est.residual, 1e-10);

        const auto noisy = draw(cfg, cons, 5.0, rng);
        const auto any = oracle::all_taps(cfg)[static_cast<std::size_t>(trial % 16)];
        const CMatrix sub = select_columns(noisy.C, tap_selector(any, cfg));
        const CVector normal = oracle::gauss_solve(sub.adjoint() * sub, sub.adjoint() * noisy.y);
        const auto e = ls_estimate(noisy.y, noisy.C, any, cfg, cons);
        ASSERT_LE((e.soft - normal).cwiseAbs().maxCoeff(), 1e-9);
        ASSERT_NEAR(e.residual, (noisy.y - sub * e.symbols).norm(), 1e-12);
    }
}

TEST(LsEstimate, RankDeficientSubspace) {
    const auto cfg = config(1, 2, 2, 1, 4);
    const auto cons = Constellation::qam(4);
    CMatrix c = CMatrix::Zero(2, 4);
    c(0, 0) = 1.0;
    c(1, 2) = 1.0;
    TapCandidate t;
    t.positions = {2, 4};
    const auto e = ls_estimate(CVector::Ones(2), c, t, cfg, cons);
    EXPECT_TRUE(e.rank_deficient);
    EXPECT_TRUE(std::isinf(e.residual));
}

TEST(Doscd, AgreesWithLiteralOracle) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto in = draw(cfg, cons, 3.0 + trial % 12, rng);
        const std::uint64_t depth = 1 + static_cast<std::uint64_t>(trial % 16);
        const auto got = doscd_detect(in.y, in.C, in.gamma, cfg, cons, depth);
        const auto expected = oracle::literal_doscd(in.y, in.C, in.gamma, cfg, cons, depth);
        ASSERT_EQ(got.tap.positions, expected.tap.positions);
        ASSERT_EQ(got.bits, expected.bits);
        ASSERT_EQ(got.counters.pseudoinverses, depth);
        ASSERT_EQ(got.counters.candidates, depth);
    }
}

TEST(Doscd, ResidualOrdering) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const auto in = draw(cfg, cons, 8.0, rng);
        const double ml = mld_detect(in.y, in.C, cfg, cons).residual;
        double prev = std::numeric_limits<double>::infinity();
        for (std::uint64_t depth = 1; depth <= 16; ++depth) {
            const double r = doscd_detect(in.y, in.C, in.gamma, cfg, cons, depth).residual;
            ASSERT_LE(r, prev);
            ASSERT_GE(r, ml - 1e-12);
            prev = r;
        }
    }
}

TEST(Doscd, NoiselessFullDepthRecovers) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto in = draw(cfg, cons, std::numeric_limits<double>::infinity(), rng);
        const auto res = doscd_detect(in.y, in.C, in.gamma, cfg, cons, 16);
        ASSERT_EQ(res.bits, in.frame.bits);
        ASSERT_FALSE(res.degraded);
    }
}

TEST(Doscd, ScaleInvariantDecision) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        const auto in = draw(cfg, cons, std::numeric_limits<double>::infinity(), rng);
        const auto a = doscd_detect(in.y, in.C, in.gamma, cfg, cons, 4);
        const auto b = doscd_detect(in.y * 2.0, in.C * 2.0, in.gamma, cfg, cons, 4);
        EXPECT_EQ(a.bits, b.bits);
    }
}

TEST(Doscd, DegradedWhenEverySubspaceIsSingular) {
    const auto cfg = config(1, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    const auto res = doscd_detect(CVector::Ones(4), CMatrix::Zero(4, 4), 10.0, cfg, cons, 4);
    EXPECT_TRUE(res.degraded);
    EXPECT_EQ(res.bits.size(), static_cast<std::size_t>(cfg.frame_bits()));
}

TEST(Doscd, DepthOutOfRangeThrows) {
    const auto cfg = config(1, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    const CMatrix c = CMatrix::Identity(4, 4);
    EXPECT_THROW(doscd_detect(CVector::Ones(4), c, 1.0, cfg, cons, 0), DimensionError);
    EXPECT_THROW(doscd_detect(CVector::Ones(4), c, 1.0, cfg, cons, 5), DimensionError);
    EXPECT_THROW(doscd_detect(CVector::Ones(3), c, 1.0, cfg, cons, 1), DimensionError);
}

TEST(LmmseDetect, NoiselessHighSnrRecovers) {
    const auto cfg = config(2, 2, 2, 2, 4);
    const auto cons = Constellation::qam(4);
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto in = draw(cfg, cons, std::numeric_limits<double>::infinity(), rng);
        EXPECT_EQ(lmmse_detect(in.y, in.C, 1e12, cfg, cons).bits, in.frame.bits);
    }
}
