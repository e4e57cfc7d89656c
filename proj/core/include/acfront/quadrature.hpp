#pragma once

#include <functional>

#include "acfront/common.hpp"

namespace acfront {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evals = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]. Panels are bisected worst-first
// until the summed error estimate drops below max(abs_tol, rel_tol*|I|).
// Throws QuadratureNotConverged when the panel budget runs out first.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 1e-14,
                     int max_panels = 4000);

// Convenience: value only.
double integral(const std::function<double(double)>& f, double a, double b,
                double rel_tol = 1e-10, double abs_tol = 1e-14);

}  // namespace acfront
