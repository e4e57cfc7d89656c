#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <random>

#include "acfront/melnikov.hpp"
#include "acfront/quadrature.hpp"

using namespace acfront;
using doctest::Approx;

TEST_CASE("closed-form constants of the cos/sin triple") {
    auto [A, B] = periodic_closed_constants(1.0, 0.0, 0.0, 4.0 * M_PI / 15.0);
    CHECK(16.0 * A == Approx(-0.702771143419869).epsilon(1e-12));
    CHECK(B == 0.0);

    auto [A0, B0] = periodic_closed_constants(0.0, 0.0, 0.0, 1.0);
    CHECK(A0 == 0.0);
    CHECK(B0 == 0.0);

    // alpha3 = 0 makes up and down identical.
    MelnikovFn up = make_melnikov_periodic_closed(0.4, -0.7, 0.0, 1.1, Orientation::Up);
    MelnikovFn down = make_melnikov_periodic_closed(0.4, -0.7, 0.0, 1.1, Orientation::Down);
    for (double phi : {-2.0, 0.3, 1.9}) CHECK(up.value(phi) == Approx(down.value(phi)));
}

TEST_CASE("quadrature agrees with the periodic closed form") {
    std::mt19937 rng(42u);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> wave(0.3, 3.0);
    for (int trial = 0; trial < 5; ++trial) {
        double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng), k = wave(rng);
        auto [A, B] = periodic_closed_constants(a1, a2, a3, k);
        Forcing f = make_cos_sin_triple(a1, a2, a3, k);
        MelnikovFn up = make_melnikov_quadrature(f, Orientation::Up);
        MelnikovFn down = make_melnikov_quadrature(f, Orientation::Down);
        for (int i = 0; i < 200; ++i) {
            double phi = -5.0 + 10.0 * i / 199.0;
            double cu = 16.0 * (A + B) * std::sin(k * phi);
            double cd = 16.0 * (A - B) * std::sin(k * phi);
            CHECK(std::abs(up.value(phi) - cu) < 1e-8 * (1.0 + std::abs(cu)));
            CHECK(std::abs(down.value(phi) - cd) < 1e-8 * (1.0 + std::abs(cd)));
        }
    }
}

TEST_CASE("triple example at k = 4 pi / 15") {
    MelnikovFn up =
        make_melnikov_periodic_closed(1.0, 0.0, 0.0, 4.0 * M_PI / 15.0, Orientation::Up);
    CHECK(up.value(15.0 / 8.0) == Approx(-0.702771143419869).epsilon(1e-12));
    CHECK(up.deriv(0.0) == Approx(-0.588752176352736).epsilon(1e-12));

    MelnikovFn zero = make_melnikov_quadrature(make_zero_forcing(), Orientation::Up);
    CHECK(zero.value(1.7) == 0.0);
    CHECK(zero.deriv(1.7) == 0.0);
}

TEST_CASE("unit-rate hill closed form") {
    MelnikovFn closed = make_melnikov_solhill_closed();
    MelnikovFn quad =
        make_melnikov_quadrature(make_topographic(make_exp_hill(1.0)), Orientation::Up);

    SUBCASE("odd with removable singularity at zero") {
        CHECK(solhill_closed(1e-9) == Approx(8.0 / 105.0 * 1e-9).epsilon(1e-12));
        CHECK(solhill_closed(-0.6) == Approx(-solhill_closed(0.6)).epsilon(1e-14));
        CHECK(solhill_closed(0.4999999) == Approx(solhill_closed(0.5000001)).epsilon(1e-8));
    }

    SUBCASE("matches the quadrature backend") {
        CHECK(solhill_closed(3.0) == Approx(-0.127778895610520).epsilon(1e-12));
        for (double psi : {0.002, 0.05, 0.5, 1.0, 3.0, 6.5, 10.0}) {
            double q = quad.value(psi / kSqrt2);
            CHECK(std::abs(solhill_closed(psi) - q) < 1e-6 * std::abs(q));
            CHECK(closed.value(psi / kSqrt2) == Approx(solhill_closed(psi)));
        }
    }

    SUBCASE("derivative matches finite differences of the closed form") {
        for (double psi : {0.1, 0.31, 1.7, 4.0}) {
            double h = 1e-6;
            double fd = (solhill_closed(psi + h) - solhill_closed(psi - h)) / (2.0 * h);
            CHECK(solhill_closed_deriv(psi) == Approx(fd).epsilon(1e-7));
        }
        CHECK(closed.deriv(1.3) == Approx(kSqrt2 * solhill_closed_deriv(kSqrt2 * 1.3)));
    }

    SUBCASE("far tail decays like -16 psi e^{-psi}") {
        // The quadrature oracle pins the prefactor of the psi >> 1 tail.
        double psi = 30.0;
        double predicted = -16.0 * (psi - 13.0 / 3.0) * std::exp(-psi);
        CHECK(solhill_closed(psi) == Approx(predicted).epsilon(1e-3));
        double q = quad.value(psi / kSqrt2);
        CHECK(q == Approx(solhill_closed(psi)).epsilon(1e-6));
    }
}

TEST_CASE("topographic Melnikov properties") {
    SUBCASE("periodicity for a periodic topography") {
        Topography topo = make_sinusoid(1.0, 2.0);
        MelnikovFn r = make_melnikov_quadrature(make_topographic(topo), Orientation::Up);
        double X = M_PI;  // period of sin(2x)
        for (double phi : {-1.3, 0.0, 0.7, 2.9})
            CHECK(std::abs(r.value(phi + X) - r.value(phi)) < 1e-9);
    }
    SUBCASE("up equals down for topographies") {
        Forcing f = make_topographic(make_exp_hill(0.8));
        MelnikovFn up = make_melnikov_quadrature(f, Orientation::Up);
        MelnikovFn down = make_melnikov_quadrature(f, Orientation::Down);
        for (double phi : {-2.0, -0.3, 1.1, 4.2})
            CHECK(std::abs(up.value(phi) - down.value(phi)) < 1e-9);
    }
    SUBCASE("even topography gives an odd Melnikov function") {
        for (auto topo : {make_exp_hill(0.9), make_alg_hill(1.5)}) {
            MelnikovFn r = make_melnikov_quadrature(make_topographic(topo), Orientation::Up);
            for (double phi : {0.4, 1.3, 3.0})
                CHECK(std::abs(r.value(-phi) + r.value(phi)) < 1e-9);
            CHECK(std::abs(r.value(0.0)) < 1e-12);
        }
    }
    SUBCASE("derivative is the H'' integrand, cross-checked by differences") {
        MelnikovFn r =
            make_melnikov_quadrature(make_topographic(make_exp_hill(0.8)), Orientation::Up);
        for (double phi : {-1.0, 0.3, 2.2}) {
            double h = 1e-5;
            double fd = (r.value(phi + h) - r.value(phi - h)) / (2.0 * h);
            CHECK(r.deriv(phi) == Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("zero scan") {
    SUBCASE("steep hill has three zeros, the middle one stable") {
        MelnikovFn r =
            make_melnikov_quadrature(make_topographic(make_exp_hill(1.0)), Orientation::Up);
        ZeroScan scan = melnikov_zero_scan(r, -6.0, 6.0, 601);
        REQUIRE(scan.zeros.size() == 3);
        CHECK_NEAR(scan.zeros[1].phi_star, 0.0, 1e-9);
        CHECK(scan.zeros[1].r_prime > 0.0);
        CHECK(scan.zeros[0].r_prime < 0.0);
        CHECK(scan.zeros[2].r_prime < 0.0);
        CHECK(scan.zeros[2].phi_star == Approx(1.71406765114241 / kSqrt2).epsilon(1e-6));
        for (const auto& z : scan.zeros) CHECK(std::abs(r.value(z.phi_star)) < 1e-10);
    }
    SUBCASE("shallow hill has one unstable zero") {
        MelnikovFn r =
            make_melnikov_quadrature(make_topographic(make_exp_hill(0.5)), Orientation::Up);
        ZeroScan scan = melnikov_zero_scan(r, -6.0, 6.0, 601);
        REQUIRE(scan.zeros.size() == 1);
        CHECK_NEAR(scan.zeros[0].phi_star, 0.0, 1e-9);
        CHECK(scan.zeros[0].r_prime < 0.0);
    }
    SUBCASE("identically zero input reports degenerate") {
        MelnikovFn r = make_melnikov_quadrature(make_zero_forcing(), Orientation::Up);
        ZeroScan scan = melnikov_zero_scan(r, -3.0, 3.0, 101);
        CHECK(scan.degenerate);
        CHECK(scan.zeros.empty());
    }
}

TEST_CASE("pitchfork rate of the exponential hill family") {
    double mu = pitchfork_mu();
    CHECK(mu == Approx(0.722133301418185).epsilon(2e-9));
    CHECK(std::abs(mu - 0.722133) < 1e-3);

    MelnikovFn steep =
        make_melnikov_quadrature(make_topographic(make_exp_hill(1.0)), Orientation::Up);
    MelnikovFn shallow =
        make_melnikov_quadrature(make_topographic(make_exp_hill(0.5)), Orientation::Up);
    CHECK(steep.deriv(0.0) > 0.0);
    CHECK(shallow.deriv(0.0) < 0.0);
}

TEST_CASE("exponential tail constants") {
    Topography topo = make_exp_hill(0.5);
    TailModel tail = tail_constants_exponential(topo, 0.5);
    const auto& e = std::get<ExponentialTail>(tail);
    CHECK(e.h_plus == Approx(-4.0 * kSqrt2 * 0.5));
    CHECK(e.h_minus == Approx(4.0 * kSqrt2 * 0.5));
    CHECK(e.w_plus == Approx(2.2214414690791831).epsilon(1e-9));
    CHECK(e.w_plus == Approx(e.w_minus).epsilon(1e-12));

    SUBCASE("w grows monotonically toward mu = 1") {
        double w08 =
            std::get<ExponentialTail>(tail_constants_exponential(make_exp_hill(0.8), 0.8)).w_plus;
        double w09 =
            std::get<ExponentialTail>(tail_constants_exponential(make_exp_hill(0.9), 0.9)).w_plus;
        double w095 = std::get<ExponentialTail>(
                          tail_constants_exponential(make_exp_hill(0.95), 0.95)).w_plus;
        CHECK(w08 == Approx(9.191359653427214).epsilon(1e-8));
        CHECK(w09 == Approx(22.601384732616423).epsilon(1e-8));
        CHECK(w095 == Approx(50.45423677965415).epsilon(1e-8));
        CHECK(w08 < w09);
        CHECK(w09 < w095);
    }
    SUBCASE("w diverges at mu >= 1") {
        CHECK_THROWS_AS(weight_tail_integral(1.0, +1), DivergentIntegral);
        CHECK_THROWS_AS(weight_tail_integral(1.2, -1), DivergentIntegral);
    }
    SUBCASE("tail limit: e^{mu psi} S(psi) -> h+ w+") {
        MelnikovFn r = make_melnikov_quadrature(make_topographic(topo), Orientation::Up);
        double psi = 25.0;
        double s = r.value(psi / kSqrt2);
        double ratio = std::exp(0.5 * psi) * s / (e.h_plus * e.w_plus);
        CHECK(std::abs(ratio - 1.0) < 0.02);
    }
}

TEST_CASE("algebraic tail constants") {
    SUBCASE("htilde and the limit constant") {
        TailModel tail = tail_constants_algebraic(make_alg_hill(2.0), 2.0);
        const auto& a = std::get<AlgebraicTail>(tail);
        CHECK(a.htilde_plus == Approx(-1.0));
        CHECK(a.htilde_minus == Approx(1.0));
        CHECK(a.limit_plus == Approx(-1.8856180831641267).epsilon(1e-12));

        MelnikovFn r =
            make_melnikov_quadrature(make_topographic(make_alg_hill(2.0)), Orientation::Up);
        double psi = 50.0;
        double value = psi * psi * r.value(psi / kSqrt2);
        CHECK(std::abs(value / a.limit_plus - 1.0) < 0.05);
    }
    SUBCASE("p = 1 is flat at infinity") {
        TailModel tail = tail_constants_algebraic(make_alg_hill(1.0), 1.0);
        const auto& a = std::get<AlgebraicTail>(tail);
        CHECK_NEAR(a.htilde_plus, 0.0, 1e-15);
        CHECK_NEAR(a.htilde_minus, 0.0, 1e-15);
    }
}

TEST_CASE("antiderivative and memoized evaluation") {
    SUBCASE("closed-form antiderivative") {
        MelnikovFn up = make_melnikov_periodic_closed(0.5, 0.2, -0.1, 1.3, Orientation::Up);
        double direct = integral([&](double p) { return up.value(p); }, 0.0, 2.0, 1e-12, 1e-14);
        CHECK(up.antiderivative(2.0) == Approx(direct).epsilon(1e-10));
    }
    SUBCASE("memo grid reproduces direct quadrature values") {
        MelnikovFn r =
            make_melnikov_quadrature(make_topographic(make_exp_hill(0.9)), Orientation::Up);
        for (double phi : {-1.01847, 0.33301, 2.5001})
            CHECK_NEAR(r.value_cached(phi), r.value(phi), 1e-10);
    }
}
