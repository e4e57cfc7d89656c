#include "acfront/frontdyn.hpp"

#include <algorithm>
#include <cmath>

namespace acfront {

namespace {
constexpr double kInvNormSq = 1.0 / kFrontNormSq;  // 3 / (2 sqrt2)
}

AnchorScheme anchor_scheme(const FrontState& s) {
    AnchorScheme a;
    double L = std::abs(std::log(s.eps.eps)) / kSqrt2;
    a.p.resize(s.positions.size());
    a.ell.resize(s.positions.size());
    for (std::size_t j = 0; j < s.positions.size(); ++j) {
        a.p[j] = std::round(s.positions[j] / L * 2.0) / 2.0;  // half-integer anchors
        a.ell[j] = s.positions[j] - a.p[j] * L;
    }
    return a;
}

NFrontSystem make_topographic_system(const Topography& topo, Quadrature q) {
    Forcing f = make_topographic(topo);
    return {make_melnikov_quadrature(f, Orientation::Up, q),
            make_melnikov_quadrature(f, Orientation::Down, q), false};
}

NFrontSystem make_periodic_closed_system(double a1, double a2, double a3, double k) {
    return {make_melnikov_periodic_closed(a1, a2, a3, k, Orientation::Up),
            make_melnikov_periodic_closed(a1, a2, a3, k, Orientation::Down), false};
}

NFrontSystem make_zero_system() {
    Forcing f = make_zero_forcing();
    return {make_melnikov_quadrature(f, Orientation::Up),
            make_melnikov_quadrature(f, Orientation::Down), false};
}

NFrontSystem make_solhill_system() {
    return {make_melnikov_solhill_closed(), make_melnikov_solhill_closed(), false};
}

std::vector<double> nfront_rhs(const FrontState& s, const NFrontSystem& sys) {
    int n = s.n();
    std::vector<double> rhs(n);
    std::vector<double> gap(n + 1, 0.0);  // 16 e^{-sqrt2 dphi_j}; boundary gaps contribute 0
    for (int j = 0; j + 1 < n; ++j)
        gap[j + 1] = 16.0 * std::exp(-kSqrt2 * (s.positions[j + 1] - s.positions[j]));
    for (int j = 0; j < n; ++j) {
        double r = sys.r(s.orientation_of(j), s.positions[j]);
        rhs[j] = kInvNormSq * (-s.eps.eps * r + gap[j + 1] - gap[j]);
    }
    return rhs;
}

double nfront_potential(const FrontState& s, const NFrontSystem& sys) {
    int n = s.n();
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += s.eps.eps * sys.for_orientation(s.orientation_of(j)).antiderivative(s.positions[j]);
    for (int j = 0; j + 1 < n; ++j)
        acc -= 8.0 * kSqrt2 * std::exp(-kSqrt2 * (s.positions[j + 1] - s.positions[j]));
    return kInvNormSq * acc;
}

std::vector<double> rescaled_rhs_topographic(const std::vector<double>& psi,
                                             const MelnikovFn& S, double eps) {
    int n = static_cast<int>(psi.size());
    std::vector<double> rhs(n);
    std::vector<double> gap(n + 1, 0.0);
    for (int j = 0; j + 1 < n; ++j) gap[j + 1] = 16.0 * std::exp(-(psi[j + 1] - psi[j]));
    for (int j = 0; j < n; ++j)
        rhs[j] = -eps * S.value(psi[j] / kSqrt2) + gap[j + 1] - gap[j];
    return rhs;
}

Eigen::MatrixXd nfront_jacobian(const FrontState& s, const NFrontSystem& sys) {
    int n = s.n();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> gap(n + 1, 0.0);
    for (int j = 0; j + 1 < n; ++j)
        gap[j + 1] = 16.0 * std::exp(-kSqrt2 * (s.positions[j + 1] - s.positions[j]));
    for (int j = 0; j < n; ++j) {
        double rp = sys.for_orientation(s.orientation_of(j)).deriv(s.positions[j]);
        jac(j, j) = kInvNormSq * (-s.eps.eps * rp + kSqrt2 * (gap[j + 1] + gap[j]));
        if (j + 1 < n) jac(j, j + 1) = -kInvNormSq * kSqrt2 * gap[j + 1];
        if (j > 0) jac(j, j - 1) = -kInvNormSq * kSqrt2 * gap[j];
    }
    return jac;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct OdeAttempt {
    std::vector<double> y_new;
    double err_norm;
};

OdeAttempt dp5_step(const std::vector<double>& y, const std::vector<double>& f0, double h,
                    const std::function<std::vector<double>(const std::vector<double>&)>& f,
                    double abs_tol, double rel_tol) {
    const int n = static_cast<int>(y.size());
    std::vector<std::vector<double>> k(7);
    k[0] = f0;
    std::vector<double> tmp(n);
    for (int stage = 1; stage < 7; ++stage) {
        for (int i = 0; i < n; ++i) {
            double acc = y[i];
            for (int s = 0; s < stage; ++s) acc += h * kA[stage][s] * k[s][i];
            tmp[i] = acc;
        }
        k[stage] = f(tmp);
    }
    // Stage 7 evaluates at the 5th-order solution (FSAL layout).
    std::vector<double> y5(n), y4(n);
    for (int i = 0; i < n; ++i) {
        double acc5 = y[i];
        for (int s = 0; s < 6; ++s) acc5 += h * kA[6][s] * k[s][i];
        y5[i] = acc5;
        double acc4 = y[i];
        for (int s = 0; s < 7; ++s) acc4 += h * kB4[s] * (s < 6 ? k[s][i] : k[6][i]);
        y4[i] = acc4;
    }
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        double e = (y5[i] - y4[i]) / sc;
        err += e * e;
    }
    err = std::sqrt(err / n);
    return {std::move(y5), err};
}

}  // namespace

FrontTrajectory integrate(const FrontState& s0, const NFrontSystem& sys, double t_end,
                          const IntegrateControls& c) {
    if (!(t_end > 0.0)) throw BadInput("integrate: t_end must be > 0");
    FrontTrajectory traj;

    std::vector<double> y = s0.positions;
    Orientation first = s0.first;
    double t = 0.0;
    double h = c.dt_init;
    double err_prev = 1.0;
    double last_recorded = -1.0;

    auto rhs_of = [&](const std::vector<double>& pos) {
        FrontState st(pos, first, s0.eps);
        return nfront_rhs(st, sys);
    };

    auto record = [&](double time, const std::vector<double>& state) {
        if (c.record_every > 0.0 && !traj.times.empty() &&
            time - last_recorded < c.record_every)
            return;
        traj.times.push_back(time);
        traj.states.push_back(state);
        last_recorded = time;
    };

    record(t, y);

    // Collision / domain checks on the current state; returns true to stop.
    auto handle_events = [&](std::vector<double>& pos) -> bool {
        for (std::size_t j = 0; j + 1 < pos.size(); ++j) {
            if (pos[j + 1] - pos[j] < c.delta_min) {
                traj.events.push_back({t, EventKind::TooClose, static_cast<int>(j),
                                       static_cast<int>(j + 1)});
                if (!c.merge_on_collision || pos.size() <= 2) return true;
                // Remove the colliding pair; index parity of the survivors is
                // unchanged, so the leading orientation stays valid.
                pos.erase(pos.begin() + j, pos.begin() + j + 2);
                return pos.empty();
            }
        }
        if (c.domain_lo && pos.front() < *c.domain_lo) {
            traj.events.push_back({t, EventKind::LeftDomain, 0, -1});
            return true;
        }
        if (c.domain_hi && pos.back() > *c.domain_hi) {
            traj.events.push_back(
                {t, EventKind::LeftDomain, static_cast<int>(pos.size()) - 1, -1});
            return true;
        }
        return false;
    };

    std::vector<double> f0 = rhs_of(y);
    if (c.fixed_dt) h = *c.fixed_dt;
    for (long step = 0; step < c.max_steps && t < t_end; ++step) {
        h = std::min({h, c.dt_max, t_end - t});
        OdeAttempt at = dp5_step(y, f0, h, rhs_of, c.abs_tol, c.rel_tol);
        if (c.fixed_dt) {
            t += h;
            y = std::move(at.y_new);
            record(t, y);
            if (handle_events(y)) return traj;
            f0 = rhs_of(y);
            h = *c.fixed_dt;
            continue;
        }
        if (std::isfinite(at.err_norm) && at.err_norm <= 1.0) {
            t += h;
            y = std::move(at.y_new);
            record(t, y);
            if (handle_events(y)) return traj;
            f0 = rhs_of(y);
            // PI controller.
            double fac = 0.9 * std::pow(std::max(at.err_norm, 1e-10), -0.7 / 5.0) *
                         std::pow(std::max(err_prev, 1e-10), 0.4 / 5.0);
            err_prev = std::max(at.err_norm, 1e-10);
            h *= std::clamp(fac, 0.2, 8.0);
        } else {
            double fac = std::isfinite(at.err_norm)
                             ? std::max(0.1, 0.9 * std::pow(at.err_norm, -1.0 / 5.0))
                             : 0.1;
            h *= fac;
        }
        if (h < c.dt_min)
            throw StepSizeUnderflow("integrate: step size underflow at t=" + std::to_string(t));
    }
    return traj;
}

}  // namespace acfront
