#include <doctest.h>

#include "test_util.hpp"

#include <cmath>

#include "acfront/core.hpp"
#include "acfront/quadrature.hpp"

using namespace acfront;
using doctest::Approx;

TEST_CASE("grid nodes reproduce exactly") {
    Grid1D g(-10.0, 10.0, 401);
    CHECK(g.dx() == Approx(0.05));
    CHECK(g.x(0) == -10.0);
    CHECK(g.x(400) == Approx(10.0).epsilon(1e-15));
    CHECK_NEAR(g.x(200), 0.0, 1e-13);
    CHECK_THROWS_AS(Grid1D(1.0, -1.0, 10), BadInput);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 2), BadInput);
}

TEST_CASE("heteroclinic values") {
    CHECK(heteroclinic(Orientation::Up, 0.0, 0.0) == 0.0);
    CHECK_NEAR(heteroclinic(Orientation::Up, 60.0, 0.0), 1.0, 1e-12);
    CHECK_NEAR(heteroclinic(Orientation::Down, 60.0, 0.0), -1.0, 1e-12);
    CHECK(heteroclinic(Orientation::Up, kSqrt2, 0.0) == Approx(std::tanh(1.0)).epsilon(1e-15));
    CHECK(std::tanh(1.0) == Approx(0.7615941559557649));
}

TEST_CASE("heteroclinic reflection is exact") {
    for (double x : {-3.7, -0.2, 0.0, 1.1, 8.4}) {
        CHECK(heteroclinic(Orientation::Down, x, 0.3) == -heteroclinic(Orientation::Up, x, 0.3));
        CHECK(heteroclinic_deriv(Orientation::Down, x, 0.3) ==
              -heteroclinic_deriv(Orientation::Up, x, 0.3));
    }
}

TEST_CASE("front derivative and its L2 norm") {
    CHECK(heteroclinic_deriv(Orientation::Up, 0.0, 0.0) == Approx(0.5 * kSqrt2).epsilon(1e-15));
    CHECK(heteroclinic_deriv(Orientation::Down, 0.0, 0.0) == Approx(-0.5 * kSqrt2));

    // ||u_up'||_2^2 = 2 sqrt2 / 3 by adaptive quadrature.
    double norm_sq = integral(
        [](double x) {
            double d = heteroclinic_deriv(Orientation::Up, x, 0.0);
            return d * d;
        },
        -40.0, 40.0, 1e-12, 1e-15);
    CHECK(norm_sq == Approx(2.0 * kSqrt2 / 3.0).epsilon(1e-10));
    CHECK(kFrontNormSq == Approx(2.0 * kSqrt2 / 3.0).epsilon(1e-15));
}

TEST_CASE("interaction weight") {
    CHECK(weight_wh(0.0) == 0.0);
    CHECK_NEAR(weight_wh(40.0), 0.0, 1e-12);
    CHECK_NEAR(weight_wh(-40.0), 0.0, 1e-12);

    double maxw = 0.0;
    for (double y = -6.0; y <= 6.0; y += 1e-3) maxw = std::max(maxw, weight_wh(y));
    CHECK(maxw == Approx(0.25).epsilon(1e-6));

    for (double y : {0.3, 1.7, 4.2}) CHECK(weight_wh(y) == Approx(weight_wh(-y)).epsilon(1e-15));
}

TEST_CASE("hamiltonian level sets") {
    CHECK(hamiltonian(1.0, 0.0) == Approx(0.25));
    CHECK(hamiltonian(-1.0, 0.0) == Approx(0.25));
    CHECK(hamiltonian(0.0, 0.0) == 0.0);
    for (double x = -20.0; x <= 20.0; x += 0.37) {
        double u = heteroclinic(Orientation::Up, x, 0.4);
        double p = heteroclinic_deriv(Orientation::Up, x, 0.4);
        CHECK(std::abs(hamiltonian(u, p) - 0.25) < 1e-12);
    }
}

TEST_CASE("multifront profile") {
    Grid1D g(-10.0, 10.0, 801);

    SUBCASE("two-front initial condition") {
        Field f = multifront_profile(g, {-4.0, 4.0}, Orientation::Up, 1.0, -1.0);
        for (int i = 0; i < g.n; i += 37) {
            double x = g.x(i);
            CHECK(f[i] == Approx(std::tanh(x + 4.0) - std::tanh(x - 4.0) - 1.0).epsilon(1e-14));
        }
    }
    SUBCASE("no fronts gives the constant offset") {
        Field f = multifront_profile(g, {}, Orientation::Up, 1.0, -1.0);
        for (int i = 0; i < g.n; ++i) CHECK(f[i] == -1.0);
    }
    SUBCASE("single front at steepness sqrt2/2 is the true profile") {
        Field f = multifront_profile(g, {0.0}, Orientation::Up, 0.5 * kSqrt2, 0.0);
        for (int i = 0; i < g.n; i += 41)
            CHECK_NEAR(f[i], heteroclinic(Orientation::Up, g.x(i), 0.0), 1e-15);
    }
    SUBCASE("non-monotone positions are rejected") {
        CHECK_THROWS_AS(multifront_profile(g, {1.0, 1.0}, Orientation::Up, 1.0, 0.0),
                        NonMonotonePositions);
        CHECK_THROWS_AS(multifront_profile(g, {2.0, -1.0}, Orientation::Up, 1.0, 0.0),
                        NonMonotonePositions);
    }
}
