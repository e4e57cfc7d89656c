#include "acfront/melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "acfront/quadrature.hpp"

namespace acfront {

namespace {

std::mutex g_cache_mutex;

double front_u(double y) { return std::tanh(0.5 * kSqrt2 * y); }
double front_du(double y) { return heteroclinic_deriv(Orientation::Up, y, 0.0); }

// Integrand magnitude estimate used to scale absolute tolerances so that
// exponentially small tail values are still resolved relatively.
double l1_estimate(const std::function<double(double)>& f, double a, double b) {
    int m = 31;
    double h = (b - a) / (m - 1);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += std::abs(f(a + i * h));
    return acc * h;
}

double scaled_integral(const std::function<double(double)>& f, double a, double b,
                       double rel_tol, double abs_tol) {
    double scale = l1_estimate(f, a, b);
    if (scale == 0.0) return 0.0;
    double abs_eff = abs_tol * std::min(1.0, scale);
    return integrate(f, a, b, rel_tol, std::max(abs_eff, 1e-290)).value;
}

}  // namespace

MelnikovFn::MelnikovFn(Forcing forcing, Orientation orientation, MelnikovBackend backend)
    : forcing_(std::move(forcing)),
      orientation_(orientation),
      backend_(std::move(backend)),
      cache_(std::make_shared<std::map<long long, double>>()) {}

double MelnikovFn::quad_value(double phi) const {
    const auto& q = std::get<Quadrature>(backend_);
    if (forcing_.is_zero()) return 0.0;
    if (const Topography* topo = forcing_.topography()) {
        // R(phi) = int H'(y + phi) W_h(y) dy; identical for both orientations.
        return scaled_integral(
            [&](double y) { return topo->deriv1(y + phi) * weight_wh(y); }, -q.half_width,
            q.half_width, q.rel_tol, q.abs_tol);
    }
    double s = sign_of(orientation_);
    return scaled_integral(
        [&](double y) {
            double u = s * front_u(y);
            double v = s * front_du(y);
            return eval_forcing(forcing_, u, v, y + phi) * v;
        },
        -q.half_width, q.half_width, q.rel_tol, q.abs_tol);
}

double MelnikovFn::quad_deriv(double phi) const {
    const auto& q = std::get<Quadrature>(backend_);
    if (forcing_.is_zero()) return 0.0;
    if (const Topography* topo = forcing_.topography()) {
        return scaled_integral(
            [&](double y) { return topo->deriv2(y + phi) * weight_wh(y); }, -q.half_width,
            q.half_width, q.rel_tol, q.abs_tol);
    }
    double s = sign_of(orientation_);
    return scaled_integral(
        [&](double y) {
            double u = s * front_u(y);
            double v = s * front_du(y);
            return forcing_partials(forcing_, u, v, y + phi).f_x * v;
        },
        -q.half_width, q.half_width, q.rel_tol, q.abs_tol);
}

double MelnikovFn::value(double phi) const {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Quadrature>) {
                return quad_value(phi);
            } else if constexpr (std::is_same_v<T, PeriodicClosed>) {
                double amp = orientation_ == Orientation::Up ? b.A + b.B : b.A - b.B;
                return 16.0 * amp * std::sin(b.k * phi);
            } else {
                return solhill_closed(kSqrt2 * phi);
            }
        },
        backend_);
}

double MelnikovFn::deriv(double phi) const {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Quadrature>) {
                return quad_deriv(phi);
            } else if constexpr (std::is_same_v<T, PeriodicClosed>) {
                double amp = orientation_ == Orientation::Up ? b.A + b.B : b.A - b.B;
                return 16.0 * amp * b.k * std::cos(b.k * phi);
            } else {
                return kSqrt2 * solhill_closed_deriv(kSqrt2 * phi);
            }
        },
        backend_);
}

double MelnikovFn::antiderivative(double phi) const {
    if (const auto* b = std::get_if<PeriodicClosed>(&backend_)) {
        double amp = orientation_ == Orientation::Up ? b->A + b->B : b->A - b->B;
        return 16.0 * amp * (1.0 - std::cos(b->k * phi)) / b->k;
    }
    if (phi == 0.0 || forcing_.is_zero()) return 0.0;
    if (const Topography* topo = forcing_.topography()) {
        // Swap the integration order: int_0^phi R = int [H(y+phi) - H(y)] W_h dy.
        double hw = 20.0;
        if (const auto* q = std::get_if<Quadrature>(&backend_)) hw = q->half_width;
        return scaled_integral(
            [&](double y) { return (topo->value(y + phi) - topo->value(y)) * weight_wh(y); },
            -hw, hw, 1e-11, 1e-14);
    }
    // Nested quadrature; the outer tolerance sits above the inner noise floor.
    return integrate([&](double p) { return value(p); }, 0.0, phi, 1e-8, 1e-9, 600).value;
}

double MelnikovFn::value_cached(double phi) const {
    if (!std::holds_alternative<Quadrature>(backend_)) return value(phi);
    constexpr double h = 1e-3;
    double t = phi / h;
    long long k0 = static_cast<long long>(std::floor(t)) - 1;
    double node[4];
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        for (int i = 0; i < 4; ++i) {
            long long key = k0 + i;
            auto it = cache_->find(key);
            if (it == cache_->end())
                it = cache_->emplace(key, quad_value(key * h)).first;
            node[i] = it->second;
        }
    }
    // 4-point Lagrange on the uniform grid, s in [1, 2).
    double s = t - k0;
    double l0 = -(s - 1) * (s - 2) * (s - 3) / 6.0;
    double l1 = s * (s - 2) * (s - 3) / 2.0;
    double l2 = -s * (s - 1) * (s - 3) / 2.0;
    double l3 = s * (s - 1) * (s - 2) / 6.0;
    return l0 * node[0] + l1 * node[1] + l2 * node[2] + l3 * node[3];
}

MelnikovFn make_melnikov_quadrature(const Forcing& f, Orientation o, Quadrature q) {
    return MelnikovFn(f, o, q);
}

MelnikovFn make_melnikov_periodic_closed(double a1, double a2, double a3, double k,
                                         Orientation o) {
    auto [A, B] = periodic_closed_constants(a1, a2, a3, k);
    return MelnikovFn(make_cos_sin_triple(a1, a2, a3, k), o, PeriodicClosed{A, B, k});
}

MelnikovFn make_melnikov_solhill_closed() {
    return MelnikovFn(make_topographic(make_exp_hill(1.0)), Orientation::Up, SolHillClosed{});
}

std::pair<double, double> periodic_closed_constants(double a1, double a2, double a3, double k) {
    if (k == 0.0) throw BadInput("periodic_closed_constants: k must be nonzero");
    double pref = k * M_PI / (3.0 * std::sinh(k * M_PI / kSqrt2));
    double A = pref * (-3.0 * a1 * k + a2 * (2.0 + k * k)) / 16.0;
    double B = pref * (3.0 * kSqrt2 * a3) / 16.0;
    return {A, B};
}

namespace {

// Odd Taylor expansion around psi = 0; the direct form loses ~7 digits to
// cancellation below |psi| ~ 0.1.
constexpr double kSolC1 = 8.0 / 105.0;
constexpr double kSolC3 = -4.0 / 105.0;
constexpr double kSolC5 = 13.0 / 2475.0;
constexpr double kSolC7 = -4309.0 / 9459450.0;
constexpr double kSolC9 = 631.0 / 20638800.0;
constexpr double kSolC11 = -2213.0 / 1272348000.0;
constexpr double kSolSwitch = 0.5;

double solhill_direct(double psi) {
    // psi > 0 assumed; all exponentials written decaying.
    double u = std::exp(-psi);
    double num = (3.0 * psi - 13.0) + 2.0 * (27.0 * psi - 47.0) * u +
                 126.0 * psi * u * u + 2.0 * (27.0 * psi + 47.0) * u * u * u +
                 (3.0 * psi + 13.0) * u * u * u * u;
    double om = -std::expm1(-psi);  // 1 - e^{-psi}
    double d6 = std::pow(om, 6);
    return -16.0 / 3.0 * u * num / d6;
}

double solhill_direct_deriv(double psi) {
    double u = std::exp(-psi);
    double num = (3.0 * psi - 13.0) + 2.0 * (27.0 * psi - 47.0) * u +
                 126.0 * psi * u * u + 2.0 * (27.0 * psi + 47.0) * u * u * u +
                 (3.0 * psi + 13.0) * u * u * u * u;
    double dnum = 3.0 + u * (54.0 - 2.0 * (27.0 * psi - 47.0)) +
                  u * u * (126.0 - 252.0 * psi) +
                  u * u * u * (54.0 - 6.0 * (27.0 * psi + 47.0)) +
                  u * u * u * u * (3.0 - 4.0 * (3.0 * psi + 13.0));
    double om = -std::expm1(-psi);
    double d6 = std::pow(om, 6);
    return -16.0 / 3.0 * u * (dnum - num - 6.0 * num * u / om) / d6;
}

}  // namespace

double solhill_closed(double psi) {
    if (psi < 0.0) return -solhill_closed(-psi);
    if (psi <= kSolSwitch) {
        double p2 = psi * psi;
        return psi * (kSolC1 + p2 * (kSolC3 + p2 * (kSolC5 + p2 * (kSolC7 +
                      p2 * (kSolC9 + p2 * kSolC11)))));
    }
    return solhill_direct(psi);
}

double solhill_closed_deriv(double psi) {
    psi = std::abs(psi);
    if (psi <= kSolSwitch) {
        double p2 = psi * psi;
        return kSolC1 + p2 * (3.0 * kSolC3 + p2 * (5.0 * kSolC5 + p2 * (7.0 * kSolC7 +
                p2 * (9.0 * kSolC9 + p2 * 11.0 * kSolC11))));
    }
    return solhill_direct_deriv(psi);
}

double weight_tail_integral(double mu, int side) {
    if (mu >= 1.0)
        throw DivergentIntegral("w_pm(mu) diverges for mu >= 1 (got mu=" + std::to_string(mu) +
                                ")");
    if (!(mu > 0.0)) throw BadInput("weight_tail_integral: need mu > 0");
    double y_max = std::min(19.5 / (1.0 - mu) + 20.0, 4000.0);
    double s = side >= 0 ? -1.0 : 1.0;  // e^{-mu sqrt2 y} for w_plus
    return integrate([&](double y) { return std::exp(s * mu * kSqrt2 * y) * weight_wh(y); },
                     -y_max, y_max, 1e-10, 1e-300, 20000)
        .value;
}

TailModel tail_constants_exponential(const Topography& topo, double mu) {
    if (!(mu > 0.0)) throw BadInput("tail_constants_exponential: need mu > 0");
    ExponentialTail t{};
    t.mu = mu;

    if (const auto* hill = std::get_if<ExpHill>(&topo.shape)) {
        t.h_plus = -4.0 * kSqrt2 * mu * hill->sign;
        t.h_minus = 4.0 * kSqrt2 * mu * hill->sign;
    } else {
        double X = 30.0 / (mu * kSqrt2) + 10.0;
        t.h_plus = std::exp(mu * kSqrt2 * X) * topo.deriv1(X);
        t.h_minus = std::exp(mu * kSqrt2 * X) * topo.deriv1(-X);
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (mu < 1.0) {
        t.w_plus = weight_tail_integral(mu, +1);
        t.w_minus = weight_tail_integral(mu, -1);
        t.hhat_plus = nan;
        t.hhat_minus = nan;
    } else {
        t.w_plus = inf;
        t.w_minus = inf;
        if (mu > 1.0) {
            double y_max = std::min(19.5 / (mu - 1.0) / kSqrt2 + 20.0, 4000.0);
            t.hhat_plus = integrate(
                              [&](double z) { return std::exp(kSqrt2 * z) * topo.deriv1(z); },
                              -30.0, y_max, 1e-10, 1e-300, 20000)
                              .value;
            t.hhat_minus = integrate(
                               [&](double z) { return std::exp(-kSqrt2 * z) * topo.deriv1(z); },
                               -y_max, 30.0, 1e-10, 1e-300, 20000)
                               .value;
        } else {
            t.hhat_plus = inf;
            t.hhat_minus = inf;
        }
    }
    return t;
}

TailModel tail_constants_algebraic(const Topography& topo, double p) {
    AlgebraicTail t{};
    t.p = p;
    if (const auto* hill = std::get_if<AlgHill>(&topo.shape)) {
        t.htilde_plus = hill->sign * (1.0 - p);
        t.htilde_minus = -hill->sign * (1.0 - p);
    } else {
        double X = 1e5;
        t.htilde_plus = std::pow(X, p) * topo.deriv1(X);
        t.htilde_minus = std::pow(X, p) * topo.deriv1(-X);
    }
    double pref = std::pow(2.0, 0.5 * (p + 3.0)) / 3.0;
    t.limit_plus = pref * t.htilde_plus;
    t.limit_minus = pref * t.htilde_minus;
    return t;
}

double tail_log_abs(const TailModel& tail, double psi) {
    if (const auto* e = std::get_if<ExponentialTail>(&tail)) {
        if (e->mu < 1.0) {
            double hw = psi >= 0.0 ? e->h_plus * e->w_plus : e->h_minus * e->w_minus;
            return std::log(std::abs(hw)) - e->mu * std::abs(psi);
        }
        if (e->mu > 1.0) {
            double hh = psi >= 0.0 ? e->hhat_plus : e->hhat_minus;
            return std::log(4.0 * std::abs(hh)) - std::abs(psi);
        }
        return std::log(16.0 * std::abs(psi)) - std::abs(psi);  // unit-rate hill
    }
    const auto& a = std::get<AlgebraicTail>(tail);
    double lim = psi >= 0.0 ? a.limit_plus : a.limit_minus;
    return std::log(std::abs(lim)) - a.p * std::log(std::abs(psi));
}

double tail_value(const TailModel& tail, double psi) {
    double sgn;
    if (const auto* e = std::get_if<ExponentialTail>(&tail)) {
        double h = psi >= 0.0 ? e->h_plus : e->h_minus;
        if (e->mu == 1.0) h = psi >= 0.0 ? -1.0 : 1.0;
        if (e->mu > 1.0) h = psi >= 0.0 ? e->hhat_plus : e->hhat_minus;
        sgn = h >= 0.0 ? 1.0 : -1.0;
    } else {
        const auto& a = std::get<AlgebraicTail>(tail);
        sgn = (psi >= 0.0 ? a.limit_plus : a.limit_minus) >= 0.0 ? 1.0 : -1.0;
    }
    return sgn * std::exp(tail_log_abs(tail, psi));
}

ZeroScan melnikov_zero_scan(const MelnikovFn& fn, double phi_min, double phi_max, int n) {
    if (n < 2) throw BadInput("melnikov_zero_scan: need n >= 2");
    ZeroScan out;
    std::vector<double> phis(n), vals(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        phis[i] = phi_min + (phi_max - phi_min) * i / (n - 1);
        vals[i] = fn.value(phis[i]);
        scale = std::max(scale, std::abs(vals[i]));
    }
    if (scale < 1e-13) {
        out.degenerate = true;
        return out;
    }

    auto refine = [&](double lo, double hi, double flo) {
        for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = fn.value(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((flo < 0) == (fm < 0)) { lo = mid; flo = fm; }
            else hi = mid;
        }
        double root = 0.5 * (lo + hi);
        double d = fn.deriv(root);
        if (d != 0.0) {
            double polished = root - fn.value(root) / d;
            if (polished > phi_min && polished < phi_max &&
                std::abs(fn.value(polished)) <= std::abs(fn.value(root)))
                root = polished;
        }
        return root;
    };

    double min_sep = (phi_max - phi_min) / (2.0 * n);
    for (int i = 0; i + 1 < n; ++i) {
        double root;
        if (vals[i] == 0.0)
            root = phis[i];
        else if ((vals[i] < 0) != (vals[i + 1] < 0))
            root = refine(phis[i], phis[i + 1], vals[i]);
        else
            continue;
        if (!out.zeros.empty() && std::abs(root - out.zeros.back().phi_star) < min_sep) continue;
        out.zeros.push_back({root, fn.deriv(root)});
    }
    return out;
}

double pitchfork_mu() {
    auto rprime0 = [](double mu) {
        Topography topo = make_exp_hill(mu);
        return integral([&](double y) { return topo.deriv2(y) * weight_wh(y); }, -25.0, 25.0,
                        1e-11, 1e-14);
    };
    double lo = 0.5, hi = 0.9;
    double flo = rprime0(lo), fhi = rprime0(hi);
    if ((flo < 0) == (fhi < 0))
        throw RootNotBracketed("pitchfork_mu: R'(0; mu) does not change sign on (0.5, 0.9)");
    for (int it = 0; it < 200 && hi - lo > 1e-11; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = rprime0(mid);
        if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace acfront
