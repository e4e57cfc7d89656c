#include <benchmark/benchmark.h>

#include "acfront/pde.hpp"

using namespace acfront;

namespace {

Field fig_ic(const Grid1D& g) {
    return multifront_profile(g, {-4.0, 4.0}, Orientation::Up, 1.0, -1.0);
}

void bm_semidiscretize(benchmark::State& state) {
    Grid1D g(-40.0, 40.0, static_cast<int>(state.range(0)));
    Forcing f = make_topographic(make_sinusoid(1.0, 2.0));
    Field u = fig_ic(g);
    Epsilon eps(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(semidiscretize(u, f, eps));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_semidiscretize)->Arg(401)->Arg(4001);

void bm_imex_run_short(benchmark::State& state) {
    Grid1D g(-10.0, 10.0, 401);
    PdeRunConfig cfg{g,   make_topographic(make_sinusoid(1.0, 2.0)),
                     Epsilon(0.1), 10.0,
                     0.1, ImexTheta{0.5},
                     5.0, fig_ic(g)};
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
}
BENCHMARK(bm_imex_run_short);

void bm_spectrum_shift_invert(benchmark::State& state) {
    Grid1D g(-40.0, 40.0, 4001);
    Field seed(g);
    for (int i = 0; i < g.n; ++i) seed[i] = heteroclinic(Orientation::Up, g.x(i), 0.0);
    Field steady = newton_steady(seed, make_zero_forcing(), Epsilon(0.1));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            discrete_spectrum(steady, make_zero_forcing(), Epsilon(0.1), 2, -0.75));
}
BENCHMARK(bm_spectrum_shift_invert);

}  // namespace
