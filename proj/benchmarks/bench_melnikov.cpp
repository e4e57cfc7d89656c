#include <benchmark/benchmark.h>

#include "acfront/melnikov.hpp"

using namespace acfront;

namespace {

void bm_melnikov_quadrature(benchmark::State& state) {
    MelnikovFn r =
        make_melnikov_quadrature(make_topographic(make_exp_hill(0.8)), Orientation::Up);
    double phi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(r.value(phi));
        phi = phi < 4.0 ? phi + 1e-3 : 0.0;
    }
}
BENCHMARK(bm_melnikov_quadrature);

void bm_melnikov_deriv_quadrature(benchmark::State& state) {
    MelnikovFn r =
        make_melnikov_quadrature(make_topographic(make_exp_hill(0.8)), Orientation::Up);
    double phi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(r.deriv(phi));
        phi = phi < 4.0 ? phi + 1e-3 : 0.0;
    }
}
BENCHMARK(bm_melnikov_deriv_quadrature);

void bm_melnikov_memoized(benchmark::State& state) {
    MelnikovFn r =
        make_melnikov_quadrature(make_topographic(make_exp_hill(0.8)), Orientation::Up);
    double phi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(r.value_cached(phi));
        phi = phi < 4.0 ? phi + 7e-4 : 0.0;
    }
}
BENCHMARK(bm_melnikov_memoized);

void bm_solhill_closed(benchmark::State& state) {
    double psi = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solhill_closed(psi));
        psi = psi < 8.0 ? psi + 1e-3 : 0.1;
    }
}
BENCHMARK(bm_solhill_closed);

void bm_zero_scan(benchmark::State& state) {
    MelnikovFn r =
        make_melnikov_quadrature(make_topographic(make_exp_hill(1.0)), Orientation::Up);
    for (auto _ : state) {
        benchmark::DoNotOptimize(melnikov_zero_scan(r, -6.0, 6.0, 301));
    }
}
BENCHMARK(bm_zero_scan);

}  // namespace

BENCHMARK_MAIN();
