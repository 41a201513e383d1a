#include <benchmark/benchmark.h>

#include <vector>

#include "l1reg/diagnostics.hpp"
#include "l1reg/rate_functions.hpp"
#include "l1reg/solver.hpp"

using namespace l1reg;

namespace {

TruncatedSequence ramp(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (i % 7 == 0 ? 1.0 : -0.5) / static_cast<double>(i + 1);
    return TruncatedSequence(v);
}

void BM_CesaroApplyAdjoint(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto op = OperatorSpec::cesaro(n);
    const auto x = ramp(n);
    for (auto _ : state) benchmark::DoNotOptimize(apply_adjoint(op, apply(op, x)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CesaroApplyAdjoint)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_FistaCesaro(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto op = OperatorSpec::cesaro(n);
    const TikhonovProblem prob{op, apply(op, ramp(n)), 2.0, 2.0, 1e-4};
    for (auto _ : state) benchmark::DoNotOptimize(solve_fista(prob));
}
BENCHMARK(BM_FistaCesaro)->Arg(100)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_SeparableDenoising(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const TikhonovProblem prob{OperatorSpec::embedding(2.0, n), ramp(n), 2.0, 2.0, 1e-3};
    for (auto _ : state) benchmark::DoNotOptimize(solve_separable(prob));
}
BENCHMARK(BM_SeparableDenoising)->Arg(5000)->Arg(50000);

void BM_SupBruteforce(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto op = OperatorSpec::cesaro(n);
    for (auto _ : state) benchmark::DoNotOptimize(sup_bruteforce(op, n));
}
BENCHMARK(BM_SupBruteforce)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_SigmaMin(benchmark::State& state) {
    const std::vector<std::size_t> sections{static_cast<std::size_t>(state.range(0))};
    const auto op = OperatorSpec::cesaro(1);
    for (auto _ : state) benchmark::DoNotOptimize(sigma_min_profile(op, sections));
}
BENCHMARK(BM_SigmaMin)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
