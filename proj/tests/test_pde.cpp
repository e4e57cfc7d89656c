#include <doctest.h>

#include "test_util.hpp"

#include <cmath>

#include "acfront/frontdyn.hpp"
#include "acfront/pde.hpp"

using namespace acfront;
using doctest::Approx;

namespace {

Field front_ic(const Grid1D& g, std::vector<double> pos, double steep, double offset) {
    return multifront_profile(g, std::move(pos), Orientation::Up, steep, offset);
}

double sup_residual(const Field& u, const Forcing& f, const Epsilon& eps) {
    Field r = semidiscretize(u, f, eps);
    double m = 0.0;
    for (double v : r.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("semidiscretization at equilibria") {
    Grid1D g(-10.0, 10.0, 201);
    Forcing zero = make_zero_forcing();
    Epsilon eps(0.1);

    Field ones(g, 1.0);
    CHECK(sup_residual(ones, zero, eps) == 0.0);
    Field zeros(g, 0.0);
    CHECK(sup_residual(zeros, zero, eps) == 0.0);
}

TEST_CASE("second-order consistency on the front profile") {
    Forcing zero = make_zero_forcing();
    Epsilon eps(0.1);
    auto residual_at = [&](int n) {
        Grid1D g(-20.0, 20.0, n);
        Field u(g);
        for (int i = 0; i < n; ++i) u[i] = heteroclinic(Orientation::Up, g.x(i), 0.0);
        return sup_residual(u, zero, eps);
    };
    double coarse = residual_at(401);   // dx = 0.1
    double fine = residual_at(801);     // dx = 0.05
    CHECK(coarse / fine == Approx(4.0).epsilon(0.15));
}

TEST_CASE("front tracking") {
    Grid1D g(-10.0, 10.0, 401);

    SUBCASE("single front at its phase") {
        Field u(g);
        for (int i = 0; i < g.n; ++i) u[i] = heteroclinic(Orientation::Up, g.x(i), 2.0);
        auto fronts = track_fronts(u);
        REQUIRE(fronts.size() == 1);
        CHECK(fronts[0].orientation == Orientation::Up);
        CHECK_NEAR(fronts[0].position, 2.0, g.dx() * g.dx());
    }
    SUBCASE("constant field has no fronts") {
        Field u(g, -1.0);
        CHECK(track_fronts(u).empty());
    }
    SUBCASE("two-front initial condition") {
        Field u = front_ic(g, {-4.0, 4.0}, 1.0, -1.0);
        auto fronts = track_fronts(u);
        REQUIRE(fronts.size() == 2);
        CHECK(fronts[0].orientation == Orientation::Up);
        CHECK(fronts[1].orientation == Orientation::Down);
        CHECK_NEAR(fronts[0].position, -4.0, 0.02);
        CHECK_NEAR(fronts[1].position, 4.0, 0.02);
    }
}

TEST_CASE("homogeneous two-front annihilates and relaxes to -1") {
    Grid1D g(-10.0, 10.0, 401);
    PdeRunConfig cfg{g,
                     make_zero_forcing(),
                     Epsilon(1e-6),  // forcing term absent either way
                     3000.0,
                     std::nullopt,
                     ImexTheta{0.5},
                     5.0,
                     front_ic(g, {-4.0, 4.0}, 1.0, -1.0)};
    PdeRunResult res = run(cfg);
    REQUIRE(!res.annihilations.empty());
    CHECK(res.tracks.back().empty());
    double worst = 0.0;
    for (double v : res.snapshots.back().values) worst = std::max(worst, std::abs(v + 1.0));
    CHECK(worst < 0.05);
}

TEST_CASE("periodic topography pins both fronts") {
    Grid1D g(-10.0, 10.0, 401);
    PdeRunConfig cfg{g,
                     make_topographic(make_sinusoid(1.0, 2.0)),
                     Epsilon(0.1),
                     400.0,
                     std::nullopt,
                     ImexTheta{0.5},
                     1.0,
                     front_ic(g, {-4.0, 4.0}, 1.0, -1.0)};
    PdeRunResult res = run(cfg);
    CHECK(res.annihilations.empty());
    REQUIRE(res.tracks.back().size() == 2);
    CHECK(res.pinned.size() == 2);

    std::size_t m = res.track_times.size();
    for (std::size_t i = m - 50; i < m; ++i) {
        REQUIRE(res.tracks[i].size() == 2);
        for (int j = 0; j < 2; ++j) {
            double v = std::abs(res.tracks[i][j].position - res.tracks[i - 1][j].position) /
                       (res.track_times[i] - res.track_times[i - 1]);
            CHECK(v < 1e-5);
        }
    }
}

TEST_CASE("explicit and imex front tracks agree") {
    Grid1D g(-10.0, 10.0, 401);
    Field ic = front_ic(g, {-4.0, 4.0}, 1.0, -1.0);
    Forcing f = make_topographic(make_sinusoid(1.0, 2.0));

    PdeRunConfig rk{g, f, Epsilon(0.1), 50.0, std::nullopt, ExplicitRk4{}, 5.0, ic};
    PdeRunConfig imex{g, f, Epsilon(0.1), 50.0, 0.002, ImexTheta{0.5}, 5.0, ic};
    PdeRunResult a = run(rk);
    PdeRunResult b = run(imex);
    REQUIRE(a.tracks.size() == b.tracks.size());
    for (std::size_t i = 0; i < a.tracks.size(); ++i) {
        REQUIRE(a.tracks[i].size() == b.tracks[i].size());
        for (std::size_t j = 0; j < a.tracks[i].size(); ++j)
            CHECK_NEAR(a.tracks[i][j].position, b.tracks[i][j].position, 1e-3);
    }
}

TEST_CASE("symmetric data stay symmetric under Neumann walls") {
    Grid1D g(-12.0, 12.0, 241);
    PdeRunConfig cfg{g,
                     make_zero_forcing(),
                     Epsilon(0.1),
                     5.0,
                     std::nullopt,
                     ExplicitRk4{},
                     1.0,
                     front_ic(g, {-3.0, 3.0}, 1.0, -1.0)};
    PdeRunResult res = run(cfg);
    const Field& u = res.snapshots.back();
    for (int i = 0; i < g.n; ++i)
        CHECK(std::abs(u[i] - u[g.n - 1 - i]) < 1e-9);
}

TEST_CASE("reduced dynamics reproduce the pde front tracks") {
    Grid1D g(-10.0, 10.0, 201);  // dx = 0.1 keeps this cheap
    Forcing f = make_topographic(make_sinusoid(1.0, 2.0));
    double eps = 0.1;
    PdeRunConfig cfg{g, f, Epsilon(eps), 100.0, std::nullopt, ImexTheta{0.5}, 1.0,
                     front_ic(g, {-4.0, 4.0}, 1.0, -1.0)};
    PdeRunResult res = run(cfg);

    NFrontSystem sys = make_topographic_system(std::get<TopographyDriven>(f.kind).topo);
    auto f0 = res.tracks.front();
    REQUIRE(f0.size() == 2);
    FrontState s0({f0[0].position, f0[1].position}, Orientation::Up, Epsilon(eps));
    FrontTrajectory traj = integrate(s0, sys, 100.0);

    for (std::size_t i = 0; i < res.track_times.size(); i += 10) {
        double t = res.track_times[i];
        std::size_t best = 0;
        for (std::size_t q = 0; q < traj.times.size(); ++q)
            if (std::abs(traj.times[q] - t) < std::abs(traj.times[best] - t)) best = q;
        REQUIRE(res.tracks[i].size() == 2);
        CHECK_NEAR(res.tracks[i][0].position, traj.states[best][0], 0.5);
        CHECK_NEAR(res.tracks[i][1].position, traj.states[best][1], 0.5);
    }
}

TEST_CASE("steady-state Newton and spatial convergence") {
    Forcing zero = make_zero_forcing();
    Epsilon eps(0.1);
    auto steady_err = [&](int n) {
        Grid1D g(-20.0, 20.0, n);
        Field seed(g);
        for (int i = 0; i < n; ++i) seed[i] = heteroclinic(Orientation::Up, g.x(i), 0.0);
        Field steady = newton_steady(seed, zero, eps);
        CHECK(sup_residual(steady, zero, eps) < 1e-9);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            worst = std::max(worst,
                             std::abs(steady[i] - heteroclinic(Orientation::Up, g.x(i), 0.0)));
        return worst;
    };
    double coarse = steady_err(201);  // dx = 0.2
    double fine = steady_err(401);    // dx = 0.1
    CHECK(coarse / fine == Approx(4.0).epsilon(0.125));
}

TEST_CASE("discrete spectrum of the homogeneous one-front") {
    Grid1D g(-40.0, 40.0, 4001);
    Forcing zero = make_zero_forcing();
    Epsilon eps(0.1);
    Field seed(g);
    for (int i = 0; i < g.n; ++i) seed[i] = heteroclinic(Orientation::Up, g.x(i), 0.0);
    Field steady = newton_steady(seed, zero, eps);

    auto eigs = discrete_spectrum(steady, zero, eps, 2, -0.75);
    REQUIRE(eigs.size() == 2);
    std::sort(eigs.begin(), eigs.end(),
              [](auto a, auto b) { return a.real() > b.real(); });
    CHECK_NEAR(eigs[0].real(), 0.0, 1e-3);
    CHECK_NEAR(eigs[1].real(), -1.5, 1e-3);
    CHECK_NEAR(eigs[0].imag(), 0.0, 1e-10);

    SUBCASE("requires a converged steady state") {
        Field bad = seed;
        bad[10] += 0.05;
        CHECK_THROWS_AS(discrete_spectrum(bad, zero, eps, 2, -0.75), BadInput);
    }
}

TEST_CASE("spectrum of the uniform states") {
    Grid1D g(-20.0, 20.0, 801);
    Forcing zero = make_zero_forcing();
    Epsilon eps(0.1);

    SUBCASE("u = 1 sits below the essential edge -2") {
        Field ones(g, 1.0);
        auto eigs = discrete_spectrum(ones, zero, eps, 3, -1.9);
        for (const auto& l : eigs) CHECK(l.real() <= -2.0 + 1e-12);
        std::sort(eigs.begin(), eigs.end(),
                  [](auto a, auto b) { return a.real() > b.real(); });
        CHECK(eigs[0].real() == Approx(-2.0).epsilon(1e-10));
    }
    SUBCASE("u = 0 is unstable with edge +1") {
        Field zeros(g, 0.0);
        auto eigs = discrete_spectrum(zeros, zero, eps, 1, 1.3);
        CHECK(eigs[0].real() == Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("dense and Arnoldi spectra agree") {
    Grid1D g(-25.0, 25.0, 1001);
    Forcing zero = make_zero_forcing();
    Epsilon eps(0.1);
    Field seed(g);
    for (int i = 0; i < g.n; ++i) seed[i] = heteroclinic(Orientation::Up, g.x(i), 0.0);
    Field steady = newton_steady(seed, zero, eps);

    auto arnoldi = discrete_spectrum(steady, zero, eps, 2, -0.75);
    auto dense = discrete_spectrum(steady, zero, eps, 2, -0.75, true);
    std::sort(arnoldi.begin(), arnoldi.end(), [](auto a, auto b) { return a.real() > b.real(); });
    std::sort(dense.begin(), dense.end(), [](auto a, auto b) { return a.real() > b.real(); });
    for (int i = 0; i < 2; ++i)
        CHECK_NEAR(arnoldi[i].real(), dense[i].real(), 1e-8);
}

TEST_CASE("forced one-front small eigenvalue matches the Melnikov law") {
    double eps_v = 0.1;
    double k = 4.0 * M_PI / 15.0;
    Forcing f = make_cos_sin_triple(1.0, 0.0, 0.0, k);
    MelnikovFn r = make_melnikov_periodic_closed(1.0, 0.0, 0.0, k, Orientation::Up);

    double phi_star = 15.0 / 4.0;  // stable zero, R'(phi*) > 0
    Grid1D g(-40.0, 40.0, 1601);
    Field seed(g);
    for (int i = 0; i < g.n; ++i) seed[i] = heteroclinic(Orientation::Up, g.x(i), phi_star);
    Field steady = newton_steady(seed, f, Epsilon(eps_v));

    auto eigs = discrete_spectrum(steady, f, Epsilon(eps_v), 1, -0.04);
    double predicted = -eps_v * (3.0 * kSqrt2 / 4.0) * r.deriv(phi_star);
    CHECK(std::abs(eigs[0].real() - predicted) < 0.2 * std::abs(predicted));
}

TEST_CASE("evans function") {
    SUBCASE("zeros at 0 and -3/2") {
        CHECK(std::abs(evans_homogeneous({0.0, 0.0}).closed_form) < 1e-12);
        CHECK(std::abs(evans_homogeneous({-1.5, 0.0}).closed_form) < 1e-12);
    }
    SUBCASE("interior value") {
        EvansValues v = evans_homogeneous({-1.0, 0.0});
        CHECK(v.closed_form.real() == Approx(-4.0 / 9.0).epsilon(1e-14));
        CHECK_NEAR(v.closed_form.imag(), 0.0, 1e-14);
    }
    SUBCASE("wronskian route agrees at sample points") {
        for (int i = 0; i < 20; ++i) {
            std::complex<double> lambda(-1.8 + 0.35 * i, (i % 5) * 0.4 - 0.8);
            if (lambda.imag() == 0.0 && lambda.real() <= -2.0) continue;
            EvansValues v = evans_homogeneous(lambda);
            CHECK(std::abs(v.wronskian - v.closed_form) <=
                  1e-10 * (1.0 + std::abs(v.closed_form)));
        }
    }
    SUBCASE("branch cut is rejected") {
        CHECK_THROWS_AS(evans_homogeneous({-2.5, 0.0}), OnBranchCut);
        CHECK_THROWS_AS(evans_homogeneous({-2.0, 0.0}), OnBranchCut);
    }
}

TEST_CASE("nan detection aborts with the offending time") {
    Grid1D g(-5.0, 5.0, 101);
    Field ic(g, 1e3);  // cubic blow-up under explicit stepping
    PdeRunConfig cfg{g,      make_zero_forcing(), Epsilon(0.1), 10.0, 0.05,
                     ExplicitRk4{}, 0.5,          ic};
    CHECK_THROWS_AS(run(cfg), NaNDetected);
}
