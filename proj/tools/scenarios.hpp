#pragma once

#include <map>
#include <string>
#include <vector>

#include "acfront/pde.hpp"

namespace acfront::cli {

// A named figure-style setup: grid, forcing, initial fronts, horizon.
struct Scenario {
    std::string id;
    std::string description;
    double x_min, x_max;
    double dx = 0.05;
    std::string forcing_spec;  // parseable forcing description (see parse_forcing)
    double eps = 0.1;
    std::vector<double> positions;
    Orientation first = Orientation::Up;
    double steepness = 1.0;
    double offset = 0.0;
    double t_end = 400.0;
    double dt = 0.1;  // imex step
    double output_every = 1.0;
    bool exploratory = false;  // beyond the validity of the reduction
};

const std::vector<Scenario>& scenario_catalog();
const Scenario& find_scenario(const std::string& id);

// "exp:MU[:SIGN]", "alg:P[:SIGN]", "sin:AMP,K", "tab:PATH",
// "mix:LOC|PER|DELTA", "triple:A1,A2,A3,K", "canon:sinf1:K" (f1 = sin(kx)),
// "zero".
Forcing parse_forcing(const std::string& spec);

// Applies --set overrides (eps, t_end, dx, dt, output_every, steepness) and
// builds the runnable config.
PdeRunConfig build_config(const Scenario& sc, const std::map<std::string, std::string>& set);

}  // namespace acfront::cli
