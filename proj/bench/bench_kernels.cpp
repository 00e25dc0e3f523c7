// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hwp/analytic.hpp"
#include "hwp/dseries.hpp"

namespace {

hwp::DirichletSeries character_series(hwp::u64 modulus, size_t index, size_t nmax) {
    auto chars = hwp::enumerate_characters(modulus);
    return hwp::l_coeffs(chars[index % chars.size()], 0, nmax);
}

std::vector<hwp::cplx> random_coeffs(size_t n) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<hwp::cplx> c(n);
    for (auto& x : c) x = {u(rng), u(rng)};
    c[0] = 1.0;
    return c;
}

void BM_convolve_serial(benchmark::State& state) {
    const auto n = static_cast<size_t>(state.range(0));
    auto a = character_series(7, 1, n), b = character_series(5, 1, n);
    for (auto _ : state) benchmark::DoNotOptimize(hwp::convolve_serial(a, b));
}

void BM_convolve_omp(benchmark::State& state) {
    const auto n = static_cast<size_t>(state.range(0));
    auto a = character_series(7, 1, n), b = character_series(5, 1, n);
    for (auto _ : state) benchmark::DoNotOptimize(hwp::convolve(a, b));
}

void BM_zero_scan_serial(benchmark::State& state) {
    auto c = random_coeffs(static_cast<size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hwp::zero_scan_serial(c, -1, 2, 10, 0.1));
}

void BM_zero_scan_omp(benchmark::State& state) {
    auto c = random_coeffs(static_cast<size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hwp::zero_scan(c, -1, 2, 10, 0.1));
}

}  // namespace

BENCHMARK(BM_convolve_serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve_omp)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_zero_scan_serial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_zero_scan_omp)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
