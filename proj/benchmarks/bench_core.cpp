#include <benchmark/benchmark.h>

#include "curveflow/fft.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/inequalities.hpp"
#include "curveflow/quantities.hpp"

using namespace curveflow;

namespace {

ClosedCurve bench_curve(std::size_t n) {
    PolarSpec ps;
    ps.modes.push_back({3, 0.2, 0.05});
    ps.modes.push_back({5, 0.05, 0.0});
    return make_curve({ps, n});
}

void BM_fft(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<cdouble> data(n);
    for (std::size_t j = 0; j < n; ++j)
        data[j] = {std::cos(0.1 * static_cast<double>(j)), std::sin(0.2 * static_cast<double>(j))};
    for (auto _ : state) {
        auto out = fft(data);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_fft)->Arg(256)->Arg(1024)->Arg(4096);

void BM_geometry_of(benchmark::State& state) {
    const auto curve = bench_curve(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto g = geometry_of(curve);
        benchmark::DoNotOptimize(g.length);
    }
}
BENCHMARK(BM_geometry_of)->Arg(256)->Arg(1024);

void BM_invariants(benchmark::State& state) {
    const auto curve = bench_curve(256);
    for (auto _ : state) {
        auto inv = invariants_of(curve, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(inv.i.data());
    }
}
BENCHMARK(BM_invariants)->Arg(0)->Arg(2)->Arg(4);

void BM_resample(benchmark::State& state) {
    const auto curve = bench_curve(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = resample_uniform_arclength(curve, curve.size());
        benchmark::DoNotOptimize(r.points().data());
    }
}
BENCHMARK(BM_resample)->Arg(256)->Arg(1024);

void BM_flow_step(benchmark::State& state) {
    FlowState s = make_state(bench_curve(static_cast<std::size_t>(state.range(0))),
                             FlowKind::length_preserving);
    for (auto _ : state) {
        auto [next, stats] = step(s, 1e-4);
        benchmark::DoNotOptimize(stats.d_length);
        s = std::move(next);
    }
}
BENCHMARK(BM_flow_step)->Arg(256)->Arg(512);

void BM_hausdorff(benchmark::State& state) {
    const auto curve = bench_curve(static_cast<std::size_t>(state.range(0)));
    const DiskSpec disk{{0.0, 0.0}, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(hausdorff_to_disk(curve, disk));
    }
}
BENCHMARK(BM_hausdorff)->Arg(256)->Arg(1024);

void BM_fuzz_trial(benchmark::State& state) {
    std::uint64_t trial = 0;
    for (auto _ : state) {
        auto [curve, desc] = random_curve("fourier", 256, 7, trial++ % 64);
        auto reports = check_deficit_bounds(curve);
        benchmark::DoNotOptimize(reports[0].ratio);
    }
}
BENCHMARK(BM_fuzz_trial);

}  // namespace

BENCHMARK_MAIN();
