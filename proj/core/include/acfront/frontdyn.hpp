#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "acfront/melnikov.hpp"

namespace acfront {

// Ordered front positions plus the orientation of the first front. Region j
// alternates orientation starting from `first`, which selects R_up or R_down
// per front.
struct FrontState {
    std::vector<double> positions;
    Orientation first = Orientation::Up;
    Epsilon eps{0.1};

    FrontState(std::vector<double> pos, Orientation first_, Epsilon e)
        : positions(std::move(pos)), first(first_), eps(e) {
        if (positions.empty()) throw BadInput("FrontState: need at least one front");
        for (std::size_t j = 1; j < positions.size(); ++j)
            if (!(positions[j - 1] < positions[j])) throw NonMonotonePositions();
    }
    int n() const { return static_cast<int>(positions.size()); }
    Orientation orientation_of(int j) const {
        return (j % 2 == 0) ? first : flip(first);
    }
};

// phi_j = p_j |log eps| / sqrt2 + ell_j.
struct AnchorScheme {
    std::vector<double> p;
    std::vector<double> ell;
};

AnchorScheme anchor_scheme(const FrontState& s);

enum class EventKind { TooClose, LeftDomain };

struct TrajectoryEvent {
    double time;
    EventKind kind;
    int i, j;  // involved front indices (j = -1 when not a pair)
};

struct FrontTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;  // positions per accepted step
    std::vector<TrajectoryEvent> events;
};

// Bundles the up/down Melnikov evaluators the reduced ODE needs. Both must
// share the same forcing.
struct NFrontSystem {
    MelnikovFn up;
    MelnikovFn down;
    bool use_cache = false;  // memoize quadrature-backed R along trajectories

    const MelnikovFn& for_orientation(Orientation o) const {
        return o == Orientation::Up ? up : down;
    }
    double r(Orientation o, double phi) const {
        const MelnikovFn& m = for_orientation(o);
        return use_cache ? m.value_cached(phi) : m.value(phi);
    }
};

NFrontSystem make_topographic_system(const Topography& topo, Quadrature q = {});
NFrontSystem make_periodic_closed_system(double a1, double a2, double a3, double k);
NFrontSystem make_zero_system();
NFrontSystem make_solhill_system();

// dphi_j/dt = [ -eps R_j(phi_j) + 16 (e^{-sqrt2 dphi_j} - e^{-sqrt2 dphi_{j-1}}) ] / ||u'||^2,
// with the boundary gaps treated as infinite (exactly zero contribution).
std::vector<double> nfront_rhs(const FrontState& s, const NFrontSystem& sys);

// Potential with rhs = -grad V; V decreases along trajectories.
double nfront_potential(const FrontState& s, const NFrontSystem& sys);

// Topographic rescaling psi = sqrt2 phi, tau = sqrt2 t / ||u'||^2:
// dpsi_j/dtau = -eps S(psi_j) + 16 (e^{-(psi_{j+1}-psi_j)} - e^{-(psi_j-psi_{j-1})}).
std::vector<double> rescaled_rhs_topographic(const std::vector<double>& psi,
                                             const MelnikovFn& S, double eps);

// Analytic Jacobian of nfront_rhs (tridiagonal).
Eigen::MatrixXd nfront_jacobian(const FrontState& s, const NFrontSystem& sys);

struct IntegrateControls {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double dt_init = 1e-2;
    double dt_min = 1e-14;
    double dt_max = 1e6;
    double delta_min = 2.0;           // TooClose threshold on any gap
    bool merge_on_collision = false;  // delete the colliding pair and resume
    std::optional<double> domain_lo;  // LeftDomain events
    std::optional<double> domain_hi;
    long max_steps = 2000000;
    double record_every = 0.0;             // 0 records every accepted step
    std::optional<double> fixed_dt;        // bypass error control entirely
};

// Embedded Dormand-Prince 5(4) with PI step control.
FrontTrajectory integrate(const FrontState& s0, const NFrontSystem& sys, double t_end,
                          const IntegrateControls& controls = {});

}  // namespace acfront
