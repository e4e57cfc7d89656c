#pragma once

#include <vector>

#include "acfront/common.hpp"

namespace acfront {

enum class Orientation { Up, Down };

inline Orientation flip(Orientation o) {
    return o == Orientation::Up ? Orientation::Down : Orientation::Up;
}
inline double sign_of(Orientation o) { return o == Orientation::Up ? 1.0 : -1.0; }

// Uniform 1D mesh. dx is derived from the endpoints and node count; it is
// never stored, so node positions reproduce exactly across runs.
struct Grid1D {
    double x_min;
    double x_max;
    int n;

    Grid1D(double x_min_, double x_max_, int n_) : x_min(x_min_), x_max(x_max_), n(n_) {
        if (!(x_min < x_max)) throw BadInput("Grid1D: x_min must be < x_max");
        if (n < 3) throw BadInput("Grid1D: need at least 3 nodes");
    }
    double dx() const { return (x_max - x_min) / (n - 1); }
    double x(int i) const { return x_min + i * dx(); }
};

// Real-valued profile sampled on a grid.
struct Field {
    Grid1D grid;
    std::vector<double> values;

    explicit Field(const Grid1D& g, double fill = 0.0) : grid(g), values(g.n, fill) {}
    Field(const Grid1D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != grid.n)
            throw BadInput("Field: value count does not match grid");
    }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }
    int size() const { return grid.n; }
};

// Heteroclinic connection of the unforced problem: +-tanh(sqrt2 (x-phi)/2).
double heteroclinic(Orientation o, double x, double phi);
// Its x-derivative, +-(sqrt2/2) sech^2(sqrt2 (x-phi)/2).
double heteroclinic_deriv(Orientation o, double x, double phi);

// Interaction weight u_up^2 (1 - u_up^2) at phase 0; takes values in [0, 1/4].
double weight_wh(double y);

// First integral of the unforced stationary problem: p^2/2 + u^2/2 - u^4/4.
double hamiltonian(double u, double p);

// Alternating tanh superposition sum_j (-1)^{j+sigma} tanh(s (x - phi_j)) + offset.
// steepness = sqrt2/2 makes each factor a true front profile.
Field multifront_profile(const Grid1D& grid, const std::vector<double>& positions,
                         Orientation first, double steepness, double base_offset);

}  // namespace acfront
