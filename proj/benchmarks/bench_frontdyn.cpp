#include <benchmark/benchmark.h>

#include "acfront/frontdyn.hpp"

using namespace acfront;

namespace {

FrontState five_fronts() {
    return FrontState({-8.0, -3.5, 1.0, 5.5, 10.0}, Orientation::Up, Epsilon(0.05));
}

void bm_nfront_rhs_closed(benchmark::State& state) {
    NFrontSystem sys = make_periodic_closed_system(0.8, -0.2, 0.3, 1.1);
    FrontState s = five_fronts();
    for (auto _ : state) benchmark::DoNotOptimize(nfront_rhs(s, sys));
}
BENCHMARK(bm_nfront_rhs_closed);

void bm_nfront_rhs_memoized(benchmark::State& state) {
    NFrontSystem sys = make_topographic_system(make_exp_hill(0.8));
    sys.use_cache = true;
    FrontState s = five_fronts();
    nfront_rhs(s, sys);  // warm the memo grid
    for (auto _ : state) benchmark::DoNotOptimize(nfront_rhs(s, sys));
}
BENCHMARK(bm_nfront_rhs_memoized);

void bm_nfront_jacobian(benchmark::State& state) {
    NFrontSystem sys = make_periodic_closed_system(0.8, -0.2, 0.3, 1.1);
    FrontState s = five_fronts();
    for (auto _ : state) benchmark::DoNotOptimize(nfront_jacobian(s, sys));
}
BENCHMARK(bm_nfront_jacobian);

void bm_integrate_two_fronts(benchmark::State& state) {
    NFrontSystem sys = make_periodic_closed_system(0.8, 0.0, 0.0, 1.0);
    FrontState s({-4.0, 4.0}, Orientation::Up, Epsilon(0.1));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(s, sys, 50.0));
}
BENCHMARK(bm_integrate_two_fronts);

}  // namespace
