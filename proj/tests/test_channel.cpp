#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "smotfs/channel.hpp"
#include "smotfs/errors.hpp"
#include "smotfs/frame.hpp"

using namespace smotfs;

namespace {

FrameConfig config(int m, int n, int nt, int nr, int p) {
    FrameConfig c;
    c.M = m;
    c.N = n;
    c.n_tx = nt;
    c.n_rx = nr;
    c.paths = p;
    return c;
}

Path path(int l, int k, Complex h) {
    Path p;
    p.delay = l;
    p.doppler = k;
    p.gains = CMatrix::Constant(1, 1, h);
    return p;
}

}  // namespace

TEST(SamplePaths, ShiftsStayOnGrid) {
    const auto cfg = config(8, 4, 2, 2, 4);
    Rng rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const auto ps = sample_paths(cfg, rng);
        ASSERT_EQ(ps.paths.size(), 4U);
        for (const auto& p : ps.paths) {
            ASSERT_GE(p.delay, 0);
            ASSERT_LE(p.delay, 7);
            ASSERT_GE(p.doppler, -3);
            ASSERT_LE(p.doppler, 3);
            ASSERT_EQ(p.gains.rows(), 2);
            ASSERT_EQ(p.gains.cols(), 2);
        }
        ASSERT_NO_THROW(ps.validate(cfg));
    }
}

TEST(SamplePaths, GainVarianceIsOneOverP) {
    for (int p : {1, 4}) {
        const auto cfg = config(4, 4, 1, 1, p);
        Rng rng(7);
        const int draws = 25000;
        double sum = 0.0;
        double sum_sq = 0.0;
        Complex mean = 0.0;
        int count = 0;
        for (int i = 0; i < draws / p; ++i) {
            for (const auto& path : sample_paths(cfg, rng).paths) {
                const double e = std::norm(path.gains(0, 0));
                sum += e;
                sum_sq += e * e;
                mean += path.gains(0, 0);
                ++count;
            }
        }
        const double m = sum / count;
        const double se = std::sqrt((sum_sq / count - m * m) / count);
        EXPECT_NEAR(m, 1.0 / p, 4 * se) << p;
        EXPECT_LT(std::abs(mean / static_cast<double>(count)), 4 * std::sqrt(1.0 / p / count));
    }
}

TEST(SamplePaths, SeedReproducible) {
    const auto cfg = config(4, 4, 2, 2, 3);
    const auto a = sample_paths(cfg, 99);
    const auto b = sample_paths(cfg, 99);
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        EXPECT_EQ(a.paths[i].delay, b.paths[i].delay);
        EXPECT_EQ(a.paths[i].doppler, b.paths[i].doppler);
        EXPECT_EQ(a.paths[i].gains, b.paths[i].gains);
    }
}

TEST(PathSet, ValidationRejectsOffGridShifts) {
    const auto cfg = config(4, 2, 1, 1, 1);
    PathSet ps{{path(4, 0, 1.0)}};
    EXPECT_THROW(ps.validate(cfg), DimensionError);
    ps.paths[0] = path(0, 2, 1.0);
    EXPECT_THROW(ps.validate(cfg), DimensionError);
    ps.paths[0] = path(0, -2, 1.0);
    EXPECT_THROW(ps.validate(cfg), DimensionError);
    ps.paths[0] = path(3, -1, 1.0);
    EXPECT_NO_THROW(ps.validate(cfg));
    ps.paths[0].gains = CMatrix::Ones(2, 1);
    EXPECT_THROW(ps.validate(cfg), DimensionError);
}

TEST(CyclicShift, Definition) {
    const CMatrix s = cyclic_shift(4, 1);
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) EXPECT_EQ(s(p, q), Complex(q == (p + 3) % 4 ? 1.0 : 0.0));
    EXPECT_EQ(cyclic_shift(3, 0), CMatrix::Identity(3, 3));
    EXPECT_EQ(cyclic_shift(5, -2), cyclic_shift(5, 3));
}

TEST(LinkMatrix, IdentityAndSwap) {
    const auto cfg = config(2, 2, 1, 1, 1);
    PathSet ps{{path(0, 0, 1.0)}};
    EXPECT_EQ(build_link_matrix(ps, 0, 0, cfg), CMatrix::Identity(4, 4));

    ps.paths[0] = path(1, 0, 1.0);
    CMatrix expected = CMatrix::Zero(4, 4);
    expected.block(0, 2, 2, 2) = CMatrix::Identity(2, 2);
    expected.block(2, 0, 2, 2) = CMatrix::Identity(2, 2);
    EXPECT_EQ(build_link_matrix(ps, 0, 0, cfg), expected);
}

TEST(LinkMatrix, MatchesEntrywiseOracle) {
    for (auto cfg : {config(4, 4, 2, 2, 3), config(8, 2, 1, 2, 4), config(3, 5, 2, 1, 6)}) {
        Rng rng(21);
        for (int trial = 0; trial < 50; ++trial) {
            auto ps = sample_paths(cfg, rng);
            ps.paths[0].doppler = -(cfg.N - 1);
            for (int r = 0; r < cfg.n_rx; ++r) {
                for (int t = 0; t < cfg.n_tx; ++t) {
                    const CMatrix got = build_link_matrix(ps, r, t, cfg);
                    ASSERT_LE((got - oracle::link_matrix_by_index(ps, r, t, cfg)).cwiseAbs().maxCoeff(), 1e-12);
                }
            }
        }
    }
}

TEST(LinkMatrix, RowsHaveAtMostPEntries) {
    const auto cfg = config(8, 4, 1, 1, 4);
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto ps = sample_paths(cfg, rng);
        const CMatrix h = build_link_matrix(ps, 0, 0, cfg);
        std::set<std::pair<int, int>> shifts;
        for (const auto& p : ps.paths) shifts.insert({p.delay, (p.doppler + cfg.N) % cfg.N});
        for (Eigen::Index row = 0; row < h.rows(); ++row) {
            const auto nz = (h.row(row).array().abs() > 0.0).count();
            ASSERT_LE(nz, cfg.paths);
            ASSERT_EQ(nz, static_cast<Eigen::Index>(shifts.size()));
        }
    }
}

TEST(MimoMatrix, BlocksAreLinks) {
    const auto cfg = config(2, 4, 2, 3, 2);
    const auto ps = sample_paths(cfg, 5);
    const CMatrix h = build_mimo_matrix(ps, cfg);
    ASSERT_EQ(h.rows(), 3 * 8);
    ASSERT_EQ(h.cols(), 2 * 8);
    for (int r = 0; r < 3; ++r)
        for (int t = 0; t < 2; ++t) EXPECT_EQ(h.block(r * 8, t * 8, 8, 8), build_link_matrix(ps, r, t, cfg));

    const auto siso = config(2, 4, 1, 1, 2);
    const auto ps1 = sample_paths(siso, 5);
    EXPECT_EQ(build_mimo_matrix(ps1, siso), build_link_matrix(ps1, 0, 0, siso));
}

TEST(MimoMatrix, ZeroGainsGiveZeroMatrix) {
    const auto cfg = config(2, 2, 2, 2, 3);
    auto ps = sample_paths(cfg, 5);
    for (auto& p : ps.paths) p.gains.setZero();
    EXPECT_TRUE(build_mimo_matrix(ps, cfg).isZero(0.0));
}

TEST(EquivalentMatrix, EqualsHTimesUpsilon) {
    for (int nt : {1, 2, 4}) {
        const auto cfg = config(2, 2, nt, 2, 2);
        const auto ps = sample_paths(cfg, 8);
        const CMatrix h = build_mimo_matrix(ps, cfg);
        const CMatrix c = equivalent_matrix(h, cfg);
        EXPECT_LE((c - h * oracle::dense_shuffle(cfg).cast<Complex>()).cwiseAbs().maxCoeff(), 0.0);
        if (nt == 1) EXPECT_EQ(c, h);
        const CVector s = CVector::Random(cfg.tx_length());
        EXPECT_LE((c * s - h * shuffle(s, cfg)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(SparseChannel, MatchesDense) {
    const auto cfg = config(4, 4, 2, 2, 5);
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const auto ps = sample_paths(cfg, rng);
        const SparseChannel sp(ps, cfg);
        const CMatrix h = build_mimo_matrix(ps, cfg);
        ASSERT_LE((sp.to_dense() - h).cwiseAbs().maxCoeff(), 1e-14);
        const CVector x = CVector::Random(cfg.tx_length());
        ASSERT_LE((sp.apply(x) - h * x).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_LE((sp.apply_equivalent(x) - equivalent_matrix(h, cfg) * x).cwiseAbs().maxCoeff(), 1e-12);
        for (int r = 0; r < 2; ++r)
            for (int t = 0; t < 2; ++t) ASSERT_LE(sp.link(r, t).size(), static_cast<std::size_t>(cfg.paths * cfg.bins()));
    }
}

TEST(Channel, LinkEnergyAveragesToBins) {
    const auto cfg = config(4, 2, 1, 1, 3);
    Rng rng(17);
    const int draws = 20000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double e = build_link_matrix(sample_paths(cfg, rng), 0, 0, cfg).squaredNorm();
        sum += e;
        sum_sq += e * e;
    }
    const double m = sum / draws;
    const double se = std::sqrt((sum_sq / draws - m * m) / draws);
    EXPECT_NEAR(m, cfg.bins(), 4 * se);
}

TEST(ApplyChannel, NoiselessAndNoiseMoments) {
    const auto cfg = config(2, 2, 2, 2, 2);
    const auto ch = ChannelRealization::make(sample_paths(cfg, 3), cfg, 0.0);
    const CVector s = CVector::Random(cfg.tx_length());
    EXPECT_EQ(apply_channel(ch.C, s, 0.0, 1), ch.C * s);

    Rng rng(9);
    const double var = 0.3;
    const CMatrix zero = CMatrix::Zero(1000, 4);
    const CVector n = apply_channel(zero, CVector::Zero(4), var, rng);
    const double power = n.squaredNorm() / 1000.0;
    EXPECT_NEAR(power, var, 4 * var / std::sqrt(1000.0));
    EXPECT_THROW(apply_channel(ch.C, s, -1.0, 1), DimensionError);
    EXPECT_THROW(apply_channel(ch.C, CVector::Zero(3), 0.1, 1), DimensionError);
}

TEST(Snr, PerSymbolDefinition) {
    const auto cfg = config(2, 2, 2, 2, 2);
    EXPECT_DOUBLE_EQ(snr_per_symbol(0.5, cfg), 1.0);
    EXPECT_DOUBLE_EQ(noise_variance_for_snr_db(0.0, cfg), 0.5);
    EXPECT_NEAR(noise_variance_for_snr_db(10.0, cfg), 0.05, 1e-15);
    EXPECT_EQ(noise_variance_for_snr_db(std::numeric_limits<double>::infinity(), cfg), 0.0);
}

TEST(ChannelDump, RoundTripsExactly) {
    for (auto cfg : {config(4, 4, 2, 2, 3), config(2, 1, 1, 3, 1)}) {
        for (std::uint64_t seed : {1ULL, 12345ULL}) {
            const auto ps = sample_paths(cfg, seed);
            std::stringstream ss;
            write_channel_dump(ss, ps, cfg, seed);
            const auto text = ss.str();
            const auto dump = read_channel_dump(ss);
            EXPECT_EQ(dump.seed, seed);
            EXPECT_EQ(dump.cfg.M, cfg.M);
            EXPECT_EQ(dump.cfg.N, cfg.N);
            EXPECT_EQ(dump.cfg.n_tx, cfg.n_tx);
            EXPECT_EQ(dump.cfg.n_rx, cfg.n_rx);
            EXPECT_EQ(dump.cfg.paths, cfg.paths);
            ASSERT_EQ(dump.paths.paths.size(), ps.paths.size());
            for (std::size_t i = 0; i < ps.paths.size(); ++i) {
                EXPECT_EQ(dump.paths.paths[i].delay, ps.paths[i].delay);
                EXPECT_EQ(dump.paths.paths[i].doppler, ps.paths[i].doppler);
                EXPECT_EQ(dump.paths.paths[i].gains, ps.paths[i].gains);
            }
            std::stringstream again;
            write_channel_dump(again, dump.paths, dump.cfg, dump.seed);
            EXPECT_EQ(again.str(), text);
            const auto lines = std::count(text.begin(), text.end(), '\n');
            EXPECT_EQ(lines, 1 + cfg.paths * cfg.n_tx * cfg.n_rx);
        }
    }
}

TEST(ChannelDump, HeaderFormat) {
    const auto cfg = config(4, 2, 2, 2, 1);
    std::stringstream ss;
    write_channel_dump(ss, sample_paths(cfg, 3), cfg, 3);
    std::string header;
    std::getline(ss, header);
    EXPECT_EQ(header, "M 4 N 2 Nt 2 Nr 2 P 1 seed 3");
}

TEST(ChannelDump, MalformedInputThrows) {
    std::istringstream empty("");
    EXPECT_THROW(read_channel_dump(empty), ConfigError);
    std::istringstream truncated("M 2 N 2 Nt 1 Nr 1 P 2 seed 1\n1 0 0 0 0 1 0\n");
    EXPECT_THROW(read_channel_dump(truncated), ConfigError);
    std::istringstream off_grid("M 2 N 2 Nt 1 Nr 1 P 1 seed 1\n1 0 0 5 0 1 0\n");
    EXPECT_THROW(read_channel_dump(off_grid), std::invalid_argument);
}
