#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <random>

#include "acfront/frontdyn.hpp"

using namespace acfront;
using doctest::Approx;

namespace {

FrontState state_of(std::vector<double> pos, double eps) {
    return FrontState(std::move(pos), Orientation::Up, Epsilon(eps));
}

}  // namespace

TEST_CASE("solitary front follows -eps R / ||u'||^2") {
    NFrontSystem sys = make_periodic_closed_system(1.0, 0.0, 0.0, 4.0 * M_PI / 15.0);
    double eps = 0.1;
    for (double phi : {-1.0, 0.5, 2.0}) {
        auto rhs = nfront_rhs(state_of({phi}, eps), sys);
        double expected = -eps * sys.up.value(phi) * 3.0 / (2.0 * kSqrt2);
        CHECK(rhs[0] == Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("pure attraction without forcing") {
    NFrontSystem sys = make_zero_system();
    auto rhs = nfront_rhs(state_of({-2.0, 2.0}, 0.1), sys);
    CHECK(rhs[0] > 0.0);
    CHECK(rhs[1] < 0.0);
    CHECK(rhs[0] == Approx(-rhs[1]).epsilon(1e-14));

    SUBCASE("gap of |log eps|/sqrt2 makes the interaction term 16 eps / ||u'||^2") {
        double eps = 0.01;
        double gap = std::abs(std::log(eps)) / kSqrt2;
        auto r = nfront_rhs(state_of({0.0, gap}, eps), sys);
        CHECK(r[0] == Approx(16.0 * eps * 3.0 / (2.0 * kSqrt2)).epsilon(1e-12));
    }
}

TEST_CASE("rhs is minus the gradient of the potential") {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto check_system = [&](const NFrontSystem& sys, int states) {
        for (int trial = 0; trial < states; ++trial) {
            int n = 1 + static_cast<int>(unif(rng) * 3.0);
            std::vector<double> pos;
            double x = -6.0 + 4.0 * unif(rng);
            for (int j = 0; j < n; ++j) {
                pos.push_back(x);
                x += 2.3 + 3.0 * unif(rng);
            }
            double eps = 0.05;
            FrontState s = state_of(pos, eps);
            auto rhs = nfront_rhs(s, sys);
            double h = 1e-5;
            for (int j = 0; j < n; ++j) {
                auto bump = [&](double d) {
                    std::vector<double> q = pos;
                    q[j] += d;
                    return nfront_potential(state_of(q, eps), sys);
                };
                double grad = (bump(h) - bump(-h)) / (2.0 * h);
                CHECK(std::abs(rhs[j] + grad) / (1.0 + std::abs(rhs[j])) < 1e-6);
            }
        }
    };
    check_system(make_periodic_closed_system(0.8, -0.2, 0.3, 1.1), 25);
    check_system(make_topographic_system(make_exp_hill(0.8)), 25);
}

TEST_CASE("rescaled topographic system matches the raw rhs") {
    NFrontSystem sys = make_topographic_system(make_exp_hill(0.8));
    double eps = 0.01;
    std::vector<double> psi{-4.0, 1.0, 7.5};
    std::vector<double> phi(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) phi[j] = psi[j] / kSqrt2;

    auto rhs_phi = nfront_rhs(state_of(phi, eps), sys);
    auto rhs_psi = rescaled_rhs_topographic(psi, sys.up, eps);
    // psi = sqrt2 phi and tau = sqrt2 t / ||u'||^2 give dpsi/dtau = ||u'||^2 dphi/dt.
    for (std::size_t j = 0; j < psi.size(); ++j)
        CHECK(std::abs(rhs_psi[j] - kFrontNormSq * rhs_phi[j]) < 1e-10);
}

TEST_CASE("analytic jacobian") {
    NFrontSystem sys = make_topographic_system(make_exp_hill(0.9));
    double eps = 0.05;
    std::vector<double> pos{-3.0, 0.4, 4.1, 8.0};
    FrontState s = state_of(pos, eps);
    Eigen::MatrixXd jac = nfront_jacobian(s, sys);

    SUBCASE("matches finite differences") {
        double h = 1e-6;
        for (int j = 0; j < 4; ++j) {
            std::vector<double> plus = pos, minus = pos;
            plus[j] += h;
            minus[j] -= h;
            auto rp = nfront_rhs(state_of(plus, eps), sys);
            auto rm = nfront_rhs(state_of(minus, eps), sys);
            for (int i = 0; i < 4; ++i) {
                double fd = (rp[i] - rm[i]) / (2.0 * h);
                CHECK_NEAR(jac(i, j), fd, 1e-6 * (1.0 + std::abs(fd)));
            }
        }
    }
    SUBCASE("tridiagonal structure is exact") {
        CHECK(jac(0, 2) == 0.0);
        CHECK(jac(0, 3) == 0.0);
        CHECK(jac(1, 3) == 0.0);
        CHECK(jac(3, 0) == 0.0);
    }
    SUBCASE("single front reduces to eps lambda_tilde") {
        NFrontSystem per = make_periodic_closed_system(1.0, 0.0, 0.0, 4.0 * M_PI / 15.0);
        FrontState one = state_of({0.0}, 0.1);
        Eigen::MatrixXd j1 = nfront_jacobian(one, per);
        // eps lambda_tilde = -eps (3 sqrt2/4) R'(0) with R'(0) = -0.588752...
        CHECK(j1(0, 0) == Approx(0.1 * 0.624465984506036).epsilon(1e-10));
    }
}

TEST_CASE("integrate: pinning of a solitary front") {
    NFrontSystem sys = make_periodic_closed_system(1.0, 0.0, 0.0, 4.0 * M_PI / 15.0);
    FrontState s0 = state_of({3.0}, 0.1);
    FrontTrajectory traj = integrate(s0, sys, 2000.0);
    REQUIRE(traj.events.empty());
    double phi_end = traj.states.back()[0];
    CHECK(phi_end == Approx(15.0 / 4.0).epsilon(1e-6));  // stable zero at k phi = pi
    CHECK(sys.up.deriv(phi_end) > 0.0);
}

TEST_CASE("integrate: attraction ends in a TooClose event") {
    NFrontSystem sys = make_zero_system();
    FrontState s0 = state_of({-2.0, 2.0}, 0.1);
    FrontTrajectory traj = integrate(s0, sys, 100.0);
    REQUIRE(traj.events.size() == 1);
    CHECK(traj.events[0].kind == EventKind::TooClose);
    CHECK(traj.events[0].i == 0);
    CHECK(traj.events[0].j == 1);
    CHECK(traj.times.back() < 100.0);
}

TEST_CASE("integrate: homogeneous extent always shrinks and V decreases") {
    NFrontSystem sys = make_zero_system();
    FrontState s0 = state_of({-6.0, -1.0, 3.0, 9.0}, 0.1);
    FrontTrajectory traj = integrate(s0, sys, 400.0);
    double prev_extent = 1e300;
    double prev_v = 1e300;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& st = traj.states[i];
        if (st.size() < 4) break;
        double extent = st.back() - st.front();
        CHECK(extent < prev_extent);
        prev_extent = extent;
        double v = nfront_potential(state_of(st, 0.1), sys);
        CHECK(v <= prev_v + 1e-12);
        prev_v = v;
    }
}

TEST_CASE("integrate: monotone potential with periodic forcing") {
    NFrontSystem sys = make_periodic_closed_system(0.6, 0.0, 0.0, 1.0);
    FrontState s0 = state_of({-4.0, 0.5, 6.0}, 0.08);
    FrontTrajectory traj = integrate(s0, sys, 300.0);
    double prev_v = 1e300;
    for (const auto& st : traj.states) {
        if (st.size() < 3) break;
        double v = nfront_potential(state_of(st, 0.08), sys);
        CHECK(v <= prev_v + 1e-10);
        prev_v = v;
    }
}

TEST_CASE("integrate: translation covariance without forcing") {
    NFrontSystem sys = make_zero_system();
    double shift = 3.7;
    IntegrateControls c;
    c.fixed_dt = 0.01;  // shared step sequence isolates the flow's equivariance
    FrontTrajectory a = integrate(state_of({-3.0, 1.0, 5.5}, 0.1), sys, 50.0, c);
    FrontTrajectory b =
        integrate(state_of({-3.0 + shift, 1.0 + shift, 5.5 + shift}, 0.1), sys, 50.0, c);
    REQUIRE(a.times.size() == b.times.size());
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        CHECK(a.times[i] == Approx(b.times[i]).epsilon(1e-12));
        for (std::size_t j = 0; j < a.states[i].size(); ++j)
            CHECK(std::abs(a.states[i][j] + shift - b.states[i][j]) < 1e-9);
    }
}

TEST_CASE("integrate: merge continuation removes the colliding pair") {
    NFrontSystem sys = make_zero_system();
    IntegrateControls c;
    c.merge_on_collision = true;
    FrontState s0 = state_of({-8.0, -1.5, 1.5, 9.0}, 0.1);
    FrontTrajectory traj = integrate(s0, sys, 500.0, c);
    REQUIRE(!traj.events.empty());
    CHECK(traj.events[0].kind == EventKind::TooClose);
    CHECK(traj.events[0].i == 1);
    CHECK(traj.events[0].j == 2);
    CHECK(traj.states.back().size() == 2);
}

TEST_CASE("solitary front over an exponential tail follows the log law") {
    // d psi / d tau = eps |h+| w+ e^{-mu psi} on the right tail integrates to
    // psi(tau) = (1/mu) log(mu eps |h+| w+ tau + e^{mu psi0}).
    double mu = 0.5, eps = 0.1;
    NFrontSystem sys = make_topographic_system(make_exp_hill(mu));
    TailModel tail = tail_constants_exponential(make_exp_hill(mu), mu);
    const auto& e = std::get<ExponentialTail>(tail);
    double hw = std::abs(e.h_plus) * e.w_plus;

    double psi0 = 10.0;
    double tau_end = 1e4 / eps;
    double t_end = tau_end * kFrontNormSq / kSqrt2;

    IntegrateControls c;
    c.record_every = t_end / 64.0;
    FrontTrajectory traj = integrate(state_of({psi0 / kSqrt2}, eps), sys, t_end, c);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        double tau = traj.times[i] * kSqrt2 / kFrontNormSq;
        double predicted = std::log(mu * eps * hw * tau + std::exp(mu * psi0)) / mu;
        double psi = kSqrt2 * traj.states[i][0];
        CHECK(std::abs(psi - predicted) / predicted < 0.02);
    }
}

TEST_CASE("anchor scheme reproduces positions") {
    FrontState s = state_of({-3.3, 1.7, 6.1}, 0.01);
    AnchorScheme a = anchor_scheme(s);
    double L = std::abs(std::log(0.01)) / kSqrt2;
    for (int j = 0; j < 3; ++j)
        CHECK(a.p[j] * L + a.ell[j] == Approx(s.positions[j]).epsilon(1e-14));
}
