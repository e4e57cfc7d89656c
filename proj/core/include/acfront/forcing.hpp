#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acfront/core.hpp"

namespace acfront {

struct Epsilon {
    double eps;
    explicit Epsilon(double e) : eps(e) {
        if (!(e > 0.0 && e < 1.0)) throw BadInput("Epsilon: need 0 < eps < 1");
    }
};

// --- Topography catalog -----------------------------------------------------
//
// Only H', H'' and H''' enter the equations, so each variant supplies those.

struct ExpHill {
    double mu;        // tail rate; H = sign / cosh^2(sqrt2 mu x / 2)
    double sign = 1.0;
};

struct AlgHill {
    double p;         // tail exponent; H = sign (1 + x^2)^{-(p-1)/2}
    double sign = 1.0;
};

struct Sinusoid {
    double amplitude;
    double k;         // H = amplitude * sin(k x)
};

struct Topography;

struct Mixed {
    std::shared_ptr<const Topography> loc;
    std::shared_ptr<const Topography> per;
    double delta;     // H = H_loc + delta * H_per
};

// Sampled H' on a strictly increasing grid; H'' from centered differences
// unless supplied. Cubic-spline interpolation inside the sample range, H'
// held at its boundary value outside (flagged via edge_extrapolated()).
class Tabulated {
  public:
    Tabulated(std::vector<double> x, std::vector<double> h1,
              std::optional<std::vector<double>> h2 = std::nullopt);

    double value(double x) const;  // cumulative integral of H', zero at the left edge
    double deriv1(double x) const;
    double deriv2(double x) const;
    double deriv3(double x) const;
    bool edge_extrapolated() const { return edge_hit_; }
    const std::vector<double>& xs() const { return x_; }

  private:
    std::vector<double> x_, h1_, h2_;
    std::vector<double> c1_, c2_;  // spline second-derivative coefficients
    std::vector<double> cum_;      // cumulative integral of the H' spline
    mutable bool edge_hit_ = false;
};

struct Topography {
    std::variant<ExpHill, AlgHill, Sinusoid, Mixed, Tabulated> shape;

    double value(double x) const;   // H (Tabulated: fixed only up to a constant)
    double deriv1(double x) const;  // H'
    double deriv2(double x) const;  // H''
    double deriv3(double x) const;  // H'''
    // Minimal period of H when the profile is periodic.
    std::optional<double> period() const;
};

Topography make_exp_hill(double mu, double sign = 1.0);
Topography make_alg_hill(double p, double sign = 1.0);
Topography make_sinusoid(double amplitude, double k);
Topography make_mixed(Topography loc, Topography per, double delta);

// Reads a two-column CSV (x, H'(x)) with a header line.
Topography load_tabulated_csv(const std::string& path);

// --- Heterogeneity F(U, V, x) -----------------------------------------------

struct ZeroForcing {};

struct ScalarFn {
    std::function<double(double)> f;
    std::function<double(double)> df;
};

struct Canonical {
    ScalarFn f1, f2, f3;  // F = f1(x) U + f2(x) V + f3(x)
};

struct CosSinTriple {
    double alpha1, alpha2, alpha3, k;  // f1 = a1 cos kx, f2 = a2 sin kx, f3 = a3 sin kx
};

struct TopographyDriven {
    Topography topo;  // F = H'(x) V + H''(x) U
};

struct Forcing {
    std::variant<ZeroForcing, Canonical, CosSinTriple, TopographyDriven> kind;

    bool is_zero() const { return std::holds_alternative<ZeroForcing>(kind); }
    bool is_topographic() const { return std::holds_alternative<TopographyDriven>(kind); }
    const Topography* topography() const {
        auto* t = std::get_if<TopographyDriven>(&kind);
        return t ? &t->topo : nullptr;
    }
    // Minimal period in x when all coefficients share one.
    std::optional<double> period() const;
};

Forcing make_zero_forcing();
Forcing make_cos_sin_triple(double a1, double a2, double a3, double k);
Forcing make_topographic(Topography topo);
Forcing make_canonical(ScalarFn f1, ScalarFn f2, ScalarFn f3);

struct ForcingPartials {
    double f_u, f_v, f_x;
};

// F(u, v, x); the eps factor is applied by callers.
double eval_forcing(const Forcing& f, double u, double v, double x);
ForcingPartials forcing_partials(const Forcing& f, double u, double v, double x);

// --- Perturbed background ("zero-front") states ------------------------------

struct BackgroundOptions {
    double forcing_bound = 1e6;              // UnboundedForcing guard
    std::vector<std::string>* warnings = nullptr;
};

// sign = +1 or -1. Returns sign*1 + eps/(2 sqrt2) * (two exponential-kernel
// convolutions of F(sign, 0, .)), the kernel truncated where it drops below 1e-14.
Field background_state(int sign, const Forcing& f, const Epsilon& eps, const Grid1D& grid,
                       const BackgroundOptions& opts = {});

}  // namespace acfront
