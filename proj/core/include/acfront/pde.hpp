#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "acfront/forcing.hpp"

namespace acfront {

struct ExplicitRk4 {};
struct ImexTheta {
    double theta = 0.5;  // implicit weight on the Laplacian; reaction stays explicit
};
using TimeScheme = std::variant<ExplicitRk4, ImexTheta>;

struct PdeRunConfig {
    Grid1D grid;
    Forcing forcing;
    Epsilon eps;
    double t_end;
    std::optional<double> dt;  // empty = auto (0.2 dx^2 explicit, 0.1 imex)
    TimeScheme scheme = ExplicitRk4{};
    double output_every = 1.0;
    Field ic;
    double pinned_speed = 1e-5;  // max front speed counted as pinned
    int pinned_frames = 50;      // sustained over this many output frames
};

struct FrontSample {
    double position;
    Orientation orientation;
};

struct AnnihilationEvent {
    double time;
    int i, j;  // indices in the front list of the previous frame
};
struct PinnedEvent {
    double time;
    int index;
    double position;
};

struct PdeRunResult {
    std::vector<double> snapshot_times;
    std::vector<Field> snapshots;
    std::vector<double> track_times;
    std::vector<std::vector<FrontSample>> tracks;
    std::vector<AnnihilationEvent> annihilations;
    std::vector<PinnedEvent> pinned;
};

// du/dt of the method-of-lines system: centered Laplacian with mirrored
// Neumann ghosts, centered U_x (one-sided second order at the walls),
// plus u - u^3 + eps F(u, u_x, x).
Field semidiscretize(const Field& u, const Forcing& forcing, const Epsilon& eps);

PdeRunResult run(const PdeRunConfig& cfg);

// Zero crossings by sign change with linear interpolation; orientation from
// the local slope. Crossing clusters tighter than 3 dx collapse to their net
// sign change.
std::vector<FrontSample> track_fronts(const Field& field);

// Damped Newton for a steady state of the semidiscrete system.
Field newton_steady(const Field& seed, const Forcing& forcing, const Epsilon& eps,
                    double tol = 1e-12, int max_iter = 50);

// `count` eigenvalues of the linearization about `steady` nearest `shift`,
// by shift-inverted Arnoldi with pivoted tridiagonal LU (dense solver for
// n <= 2000 when requested).
std::vector<std::complex<double>> discrete_spectrum(const Field& steady, const Forcing& forcing,
                                                    const Epsilon& eps, int count, double shift,
                                                    bool force_dense = false);

struct EvansValues {
    std::complex<double> closed_form;  // (4/9) lambda (3 + 2 lambda) sqrt(2 + lambda)
    std::complex<double> wronskian;    // same quantity from the explicit solution basis
};

// lambda off the branch cut (-inf, -2].
EvansValues evans_homogeneous(std::complex<double> lambda);

}  // namespace acfront
