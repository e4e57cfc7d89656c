#pragma once

#include <map>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "acfront/forcing.hpp"

namespace acfront {

// Backends for evaluating R(phi) = int F(u_h, u_h', x) u_h' dx.

struct Quadrature {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    double half_width = 20.0;  // weight support: W_h(+-20) < 4e-12
};

// R_up = 16 (A + B) sin(k phi), R_down = 16 (A - B) sin(k phi).
struct PeriodicClosed {
    double A, B, k;
};

// Exponential hill with unit rate: the explicit rational-exponential form.
struct SolHillClosed {};

using MelnikovBackend = std::variant<Quadrature, PeriodicClosed, SolHillClosed>;

// Evaluator for one Melnikov function R(phi) and its derivative.
class MelnikovFn {
  public:
    MelnikovFn(Forcing forcing, Orientation orientation, MelnikovBackend backend);

    double value(double phi) const;
    double deriv(double phi) const;          // analytic integrand, never finite differences
    double antiderivative(double phi) const; // int_0^phi R

    // Memoized value on a 1e-3 phi-grid with cubic interpolation; only the
    // quadrature backend caches, closed forms evaluate directly.
    double value_cached(double phi) const;

    const Forcing& forcing() const { return forcing_; }
    Orientation orientation() const { return orientation_; }
    const MelnikovBackend& backend() const { return backend_; }

  private:
    double quad_value(double phi) const;
    double quad_deriv(double phi) const;

    Forcing forcing_;
    Orientation orientation_;
    MelnikovBackend backend_;
    std::shared_ptr<std::map<long long, double>> cache_;
};

// Factory helpers.
MelnikovFn make_melnikov_quadrature(const Forcing& f, Orientation o, Quadrature q = {});
MelnikovFn make_melnikov_periodic_closed(double a1, double a2, double a3, double k,
                                         Orientation o);
MelnikovFn make_melnikov_solhill_closed();

// Closed-form constants of the cos/sin triple family:
//   16A = k pi [-3 a1 k + a2 (2 + k^2)] / (3 sinh(k pi / sqrt2))
//   16B = k pi [3 sqrt2 a3]            / (3 sinh(k pi / sqrt2))
std::pair<double, double> periodic_closed_constants(double a1, double a2, double a3, double k);

// S_exp(psi; 1): Melnikov function of the unit-rate exponential hill in the
// stretched variable psi = sqrt2 phi. Series branch below |psi| < 1e-3.
double solhill_closed(double psi);
double solhill_closed_deriv(double psi);

// --- Tail models (decay of S(psi) for |psi| -> infinity) ---------------------

struct ExponentialTail {
    double mu;
    double h_plus, h_minus;      // lim e^{+-mu sqrt2 x} H'(x)
    double w_plus, w_minus;      // int e^{-+mu sqrt2 y} W_h dy, finite for 0 < mu < 1
    double hhat_plus, hhat_minus;  // int e^{+-sqrt2 z} H'(z) dz, the mu > 1 constants
};

struct AlgebraicTail {
    double p;
    double htilde_plus, htilde_minus;  // lim |x|^p H'(x)
    // |psi|^p S(psi) -> (1/3) 2^{(p+3)/2} htilde_{+-}
    double limit_plus, limit_minus;
};

using TailModel = std::variant<ExponentialTail, AlgebraicTail>;

// int e^{-+ mu sqrt2 y} W_h(y) dy (side >= 0 gives w_plus). Finite only for
// 0 < mu < 1; throws DivergentIntegral otherwise.
double weight_tail_integral(double mu, int side);

// Tail constants for an exponentially decaying H' with rate mu.
// w_{+-} are +inf for mu >= 1; the hhat constants take over for mu > 1.
TailModel tail_constants_exponential(const Topography& topo, double mu);
TailModel tail_constants_algebraic(const Topography& topo, double p);

// log |S(psi)| predicted by the tail model on the indicated side; usable far
// beyond double range.
double tail_log_abs(const TailModel& tail, double psi);
double tail_value(const TailModel& tail, double psi);

// --- Zero scan ----------------------------------------------------------------

struct MelnikovZero {
    double phi_star;
    double r_prime;
};

struct ZeroScan {
    std::vector<MelnikovZero> zeros;
    bool degenerate = false;  // R identically ~0 on the scan grid
};

// Sign changes of R on n samples of [phi_min, phi_max], refined by bisection
// plus one Newton polish to |R| < 1e-10.
ZeroScan melnikov_zero_scan(const MelnikovFn& fn, double phi_min, double phi_max, int n);

// The exponential-hill rate at which R'(0; mu) vanishes, by bisection on
// mu in (0.5, 0.9).
double pitchfork_mu();

}  // namespace acfront
