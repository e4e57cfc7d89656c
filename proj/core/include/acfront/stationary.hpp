#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acfront/frontdyn.hpp"

namespace acfront {

// --- Result types -------------------------------------------------------------

struct OneFrontKind {
    double phi_star;
};
struct TwoFrontKind {};
// Localized multi-front: kind 1 pairs both outer tails, kinds 2/3 put one
// front on a Melnikov zero with the chain right/left, kind 4 has chains on
// both sides of the zero.
struct LocalizedKind {
    int kind = 1;          // 1..4
    int left_chain = 0;    // fronts chained left of the core
    int right_chain = 0;   // fronts chained right of the core
    std::optional<double> psi_star;  // zero the core sits on (kinds 2-4)
};
struct PeriodicGridKind {
    std::vector<int> zero_index;     // i_j into the per-period zero list
    std::vector<long> period_index;  // n_j
};

using StationaryKind = std::variant<OneFrontKind, TwoFrontKind, LocalizedKind, PeriodicGridKind>;

struct StationaryFront {
    std::vector<double> positions;  // phi coordinates, ordered
    Orientation first = Orientation::Up;
    StationaryKind kind;
    std::vector<std::complex<double>> eigenvalues;
    double newton_residual = 0.0;
    std::string seed;  // provenance of the initial guess
    std::vector<std::string> warnings;

    double max_real_eigenvalue() const;
};

struct TwoFrontStability {
    double lambda1, lambda2;          // bar-lambda values; PDE eigenvalues are eps * these
    double gamma_plus_1, gamma_plus_2;  // eigenfunction ratios, gamma_minus = 1
    double discriminant_d;
};

// --- One- and two-front operations ---------------------------------------------

struct OneFrontScan {
    std::vector<StationaryFront> fronts;
    bool degenerate = false;  // R identically zero
};

OneFrontScan one_front_find(const MelnikovFn& r, double phi_min, double phi_max, int n,
                            double eps);

StationaryFront two_front_solve(const MelnikovFn& r_up, const MelnikovFn& r_down, double eps,
                                std::pair<double, double> seed);

TwoFrontStability two_front_eigenvalues(double phi_up, double phi_down, const MelnikovFn& r_up,
                                        const MelnikovFn& r_down, double eps);

// --- Localized enumeration -------------------------------------------------------

struct LocalizedSeedPlan {
    int kind = 1;
    double mu_or_p = 0.0;
    bool exponential = true;
    std::vector<double> nu;    // psi_j ~ nu_j |log eps| (0 for the core zero front)
    std::vector<double> ell;   // additive offsets
    std::vector<double> psi;   // seed positions, stretched variable
    double mu_star_n = 1.0;    // 1 - 2^{-1/(N-1)}
    double theta2 = 0.0;       // algebraic order function 1/(|log eps| + p log|log eps|)
    std::vector<std::string> warnings;
};

double mu_star(int n_fronts);  // 1 - 2^{-1/(N-1)}
// nu_N(mu) = (1/mu) [ (1-mu)^{-(N-1)} - 1 ]; the exponential chain exponents.
double chain_exponent(int n_fronts, double mu);

LocalizedSeedPlan localized_seed(int kind, int n_fronts, const TailModel& tail, double eps,
                                 std::optional<double> psi_star = std::nullopt,
                                 int left_chain = -1);

struct EnumerationReport {
    std::vector<StationaryFront> fronts;
    int melnikov_zero_count = 0;
    std::vector<std::string> failures;  // per-seed Newton failures, non-fatal
};

EnumerationReport enumerate_stationary_localized(const Topography& topo, double eps,
                                                 int n_fronts);

// --- Periodic enumeration ---------------------------------------------------------

struct PeriodicEnumeration {
    std::vector<StationaryFront> fronts;
    std::vector<bool> stable;              // all S'(psi*_{i_j}) > 0
    std::vector<double> eigenvalue_dev;    // max rel deviation from -eps S'(psi*)
    double rho = 0.0;                      // min gap / |log eps|
    int zeros_per_period = 0;
    std::vector<std::string> failures;
};

// window = whole periods between consecutive fronts.
PeriodicEnumeration enumerate_stationary_periodic(const Topography& topo, double eps,
                                                  int n_fronts, int window);

// --- Periodic two-front (D,S)-plane analysis ---------------------------------------

enum class FixedPointType { StableNode, Saddle, UnstableNode, Degenerate };

struct DsFixedPoint {
    double d, s;
    FixedPointType type;
    double lambda1, lambda2;
};

struct PeriodicTwoFrontBifurcation {
    double phase_r;  // k |log eps| / (2 sqrt2) mod 2 pi
    double a_sn = 0.0;                      // tangency threshold (arch tracked)
    double a_pf = 0.0;                      // pitchfork (B = 0); NaN otherwise
    double a_sn2 = 0.0;                     // second saddle-node (B != 0); NaN otherwise
    double d_lo = 0.0, d_hi = 0.0;          // reporting window (one sine arch)
    double arch_d = 0.0;                    // centre of the tracked arch
    std::vector<DsFixedPoint> fixed_points;  // at the input A
};

// track_d pins the tracked arch to the one containing that d value;
// otherwise the arch whose tangency opened last below |A| is used.
PeriodicTwoFrontBifurcation periodic_two_front_bifurcation(double A, double B, double k,
                                                           double eps,
                                                           std::optional<double> track_d = {});

// --- Shared refinement ---------------------------------------------------------------

struct NewtonOutcome {
    std::vector<double> positions;
    double residual = 0.0;
    double scale = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Damped Newton on the reduced-ODE right-hand side. Components whose terms
// underflow double precision are frozen (their equations are 0 = 0).
NewtonOutcome refine_equilibrium(std::vector<double> positions, Orientation first, double eps,
                                 const NFrontSystem& sys, int max_iter = 60);

}  // namespace acfront
