#include <benchmark/benchmark.h>

#include "smotfs/channel.hpp"
#include "smotfs/detectors.hpp"
#include "smotfs/tap_enumeration.hpp"

using namespace smotfs;

namespace {

FrameConfig desk(int m, int n) {
    FrameConfig c;
    c.M = m;
    c.N = n;
    return c;
}

struct Instance {
    FrameConfig cfg;
    Constellation cons = Constellation::qam(4);
    CMatrix C;
    CVector y;
    double gamma = 0.0;
};

Instance make(const FrameConfig& cfg, double snr_db) {
    Instance in;
    in.cfg = cfg;
    Rng rng(1);
    in.C = equivalent_matrix(build_mimo_matrix(sample_paths(cfg, rng), cfg), cfg);
    const auto f = map_bits(random_bits(rng, cfg.frame_bits()), cfg, in.cons);
    const double var = noise_variance_for_snr_db(snr_db, cfg);
    in.y = apply_channel(in.C, f.s, var, rng);
    in.gamma = snr_per_symbol(var, cfg);
    return in;
}

void BM_Mld(benchmark::State& state) {
    const auto in = make(desk(2, 2), 12.0);
    for (auto _ : state) benchmark::DoNotOptimize(mld_detect(in.y, in.C, in.cfg, in.cons));
}
BENCHMARK(BM_Mld);

void BM_Doscd(benchmark::State& state) {
    const auto in = make(desk(static_cast<int>(state.range(0)), 2), 12.0);
    const auto depth = static_cast<std::uint64_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(doscd_detect(in.y, in.C, in.gamma, in.cfg, in.cons, depth));
    state.counters["td"] = static_cast<double>(depth);
}
BENCHMARK(BM_Doscd)->Args({2, 4})->Args({2, 16})->Args({4, 16})->Args({4, 256})->Args({8, 256});

void BM_TapEnumerator(benchmark::State& state) {
    const auto cfg = desk(8, 4);
    Rng rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RVector d(cfg.tx_length());
    for (auto& v : d) v = u(rng);
    const auto depth = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_taps_best_first(d, cfg, depth));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TapEnumerator)->Range(16, 1 << 14);

void BM_DenseChannel(benchmark::State& state) {
    const auto cfg = desk(static_cast<int>(state.range(0)), 4);
    const CMatrix h = build_mimo_matrix(sample_paths(cfg, 3), cfg);
    const CVector x = CVector::Random(cfg.tx_length());
    for (auto _ : state) benchmark::DoNotOptimize((h * x).eval());
}
BENCHMARK(BM_DenseChannel)->Arg(8)->Arg(32);

void BM_SparseChannel(benchmark::State& state) {
    const auto cfg = desk(static_cast<int>(state.range(0)), 4);
    const SparseChannel h(sample_paths(cfg, 3), cfg);
    const CVector x = CVector::Random(cfg.tx_length());
    for (auto _ : state) benchmark::DoNotOptimize(h.apply(x));
}
BENCHMARK(BM_SparseChannel)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
