#include "acfront/core.hpp"

#include <cmath>

namespace acfront {

double heteroclinic(Orientation o, double x, double phi) {
    return sign_of(o) * std::tanh(0.5 * kSqrt2 * (x - phi));
}

double heteroclinic_deriv(Orientation o, double x, double phi) {
    // sech^2 written in decaying exponentials; the cosh form overflows and
    // the tanh form saturates long before the true value underflows.
    double q = std::exp(-kSqrt2 * std::abs(x - phi));
    double d = 1.0 + q;
    return sign_of(o) * 0.5 * kSqrt2 * 4.0 * q / (d * d);
}

double weight_wh(double y) {
    double q = std::exp(-kSqrt2 * std::abs(y));
    double d = 1.0 + q;
    double om = 1.0 - q;
    return 4.0 * q * om * om / (d * d * d * d);
}

double hamiltonian(double u, double p) {
    return 0.5 * p * p + 0.5 * u * u - 0.25 * u * u * u * u;
}

Field multifront_profile(const Grid1D& grid, const std::vector<double>& positions,
                         Orientation first, double steepness, double base_offset) {
    for (std::size_t j = 1; j < positions.size(); ++j)
        if (!(positions[j - 1] < positions[j])) throw NonMonotonePositions();
    if (!(steepness > 0.0)) throw BadInput("multifront_profile: steepness must be > 0");

    Field f(grid, base_offset);
    double s0 = sign_of(first);
    for (int i = 0; i < grid.n; ++i) {
        double x = grid.x(i);
        double acc = 0.0;
        double s = s0;
        for (double p : positions) {
            acc += s * std::tanh(steepness * (x - p));
            s = -s;
        }
        f[i] += acc;
    }
    return f;
}

}  // namespace acfront
