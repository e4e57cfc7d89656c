#pragma once

#include <optional>
#include <vector>

#include "acfront/forcing.hpp"

namespace acfront {

// Solution basis of the front linearization L0 psi = 0.
double psi_b(double x, double phi);    // bounded branch, (sqrt2/2) sech^2
double psi_u_v(double x, double phi);  // v with v' = psi_b^{-2}; v(phi; phi) = 0
double psi_u(double x, double phi);    // unbounded branch, v * psi_b
double psi_b_deriv(double x, double phi);
double psi_u_deriv(double x, double phi);

enum class BoundedSide { BoundedLeft, BoundedRight };

// Order-eps correction u1 = A psi_b + B psi_u of a perturbed front, with the
// free constant fixed by boundedness on one side.
struct Expansion1 {
    double phi;
    Orientation orientation;
    BoundedSide side;
    double b_minus, b_plus;  // limits of B; b_minus - b_plus equals R(phi)
};

Expansion1 expansion1(const Forcing& f, double phi, Orientation o, BoundedSide side);

struct CorrectionValue {
    double u1, u1_x;
    bool outside_window = false;  // only set when eps is supplied
};

CorrectionValue first_order_correction(const Forcing& f, double phi, Orientation o,
                                       BoundedSide side, double x,
                                       std::optional<double> eps = std::nullopt);

enum class ManifoldBranch { WuMinus, WsMinus, WuPlus, WsPlus };

struct ManifoldSection {
    ManifoldBranch which;
    double section_x;
    double eps;
    std::vector<double> phi;
    std::vector<double> u, p;
    std::vector<bool> in_window;
};

ManifoldSection manifold_section(const Forcing& f, double eps, ManifoldBranch which,
                                 double section_x, std::pair<double, double> phi_range, int n);

struct LobeIntersection {
    double phi_a, phi_b;
    double u, p;
};

// Polyline crossing scan refined by a 2D Newton equalizing the curve points.
std::vector<LobeIntersection> lobe_intersections(const ManifoldSection& a,
                                                 const ManifoldSection& b);

// The Wu(M-) and Ws(M-) section curves over one forcing period of lobes
// around the natural crossing depth.
std::pair<ManifoldSection, ManifoldSection> two_front_lobe_sections(const Forcing& f,
                                                                    double eps,
                                                                    double section_x = 0.0,
                                                                    int points_per_curve = 1400);

// Intersections of those curves; each one is a stationary two-front candidate.
std::vector<LobeIntersection> two_front_lobe_intersections(const Forcing& f, double eps,
                                                           double section_x = 0.0,
                                                           int points_per_curve = 1400);

enum class BifurcationLabel { SaddleNode, Pitchfork };

struct BifurcationThreshold {
    double parameter;
    int count_before, count_after;
    BifurcationLabel label;
};

// Bisects the parameter values where the lobe-intersection count changes.
// 0 -> 2 transitions are saddle-nodes; 2 -> 4 is a pitchfork when the forcing
// has the odd symmetry F(-U, -V, x) = -F(U, V, x), a saddle-node otherwise.
std::vector<BifurcationThreshold> bifurcation_scan(
    const std::function<Forcing(double)>& family, double eps,
    const std::vector<double>& parameter_grid, double section_x = 0.0,
    int points_per_curve = 1400);

}  // namespace acfront
