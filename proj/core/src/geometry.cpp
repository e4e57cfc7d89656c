#include "acfront/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "acfront/melnikov.hpp"
#include "acfront/quadrature.hpp"

namespace acfront {

double psi_b(double x, double phi) {
    return heteroclinic_deriv(Orientation::Up, x, phi);
}

double psi_u_v(double x, double phi) {
    double w = x - phi;
    return 0.75 * w + 0.5 * kSqrt2 * std::sinh(kSqrt2 * w) +
           kSqrt2 / 16.0 * std::sinh(2.0 * kSqrt2 * w);
}

double psi_u(double x, double phi) { return psi_u_v(x, phi) * psi_b(x, phi); }

double psi_b_deriv(double x, double phi) {
    double w = 0.5 * kSqrt2 * (x - phi);
    double s = 1.0 / std::cosh(w);
    return -s * s * std::tanh(w);
}

double psi_u_deriv(double x, double phi) {
    // (v psi_b)' = psi_b^{-1} + v psi_b'
    return 1.0 / psi_b(x, phi) + psi_u_v(x, phi) * psi_b_deriv(x, phi);
}

namespace {

constexpr double kTailCut = 38.0;  // psi_b ~ 2 sqrt2 e^{-sqrt2*38} < 1e-22

struct BaseFront {
    double s;  // orientation sign
    double phi;
    double u(double x) const { return s * std::tanh(0.5 * kSqrt2 * (x - phi)); }
    double du(double x) const { return s * heteroclinic_deriv(Orientation::Up, x, phi); }
};

double forcing_on_front(const Forcing& f, const BaseFront& b, double z) {
    return eval_forcing(f, b.u(z), b.du(z), z);
}

}  // namespace

Expansion1 expansion1(const Forcing& f, double phi, Orientation o, BoundedSide side) {
    BaseFront base{sign_of(o), phi};
    // Integrals of F * psi_b over the half lines; psi_b carries the
    // orientation sign here.
    double s = sign_of(o);
    auto fb = [&](double z) { return forcing_on_front(f, base, z) * s * psi_b(z, phi); };
    double left = integral(fb, phi - kTailCut, phi, 1e-10, 1e-13);
    double right = integral(fb, phi, phi + kTailCut, 1e-10, 1e-13);

    Expansion1 e;
    e.phi = phi;
    e.orientation = o;
    e.side = side;
    double b0 = side == BoundedSide::BoundedLeft ? -left : right;
    e.b_minus = b0 + left;   // B0 - int_phi^{-inf} = B0 + int_{-inf}^phi
    e.b_plus = b0 - right;
    return e;
}

CorrectionValue first_order_correction(const Forcing& f, double phi, Orientation o,
                                       BoundedSide side, double x,
                                       std::optional<double> eps) {
    BaseFront base{sign_of(o), phi};
    double s = sign_of(o);

    auto fpsib = [&](double z) { return forcing_on_front(f, base, z) * s * psi_b(z, phi); };
    auto fpsiu = [&](double z) { return forcing_on_front(f, base, z) * s * psi_u(z, phi); };

    double a_val = x == phi ? 0.0 : integral(fpsiu, phi, x, 1e-10, 1e-13);
    double b0;
    if (side == BoundedSide::BoundedLeft)
        b0 = -integral(fpsib, phi - kTailCut, phi, 1e-10, 1e-13);
    else
        b0 = integral(fpsib, phi, phi + kTailCut, 1e-10, 1e-13);
    double b_val = b0 - (x == phi ? 0.0 : integral(fpsib, phi, x, 1e-10, 1e-13));

    CorrectionValue cv;
    cv.u1 = a_val * s * psi_b(x, phi) + b_val * s * psi_u(x, phi);
    cv.u1_x = a_val * s * psi_b_deriv(x, phi) + b_val * s * psi_u_deriv(x, phi);
    if (eps) {
        double window = std::abs(std::log(*eps)) / (2.0 * kSqrt2) + 1.0;
        double growth = side == BoundedSide::BoundedLeft ? x - phi : phi - x;
        cv.outside_window = growth > window;
    }
    return cv;
}

ManifoldSection manifold_section(const Forcing& f, double eps, ManifoldBranch which,
                                 double section_x, std::pair<double, double> phi_range, int n) {
    if (n < 2) throw BadInput("manifold_section: need n >= 2");
    Orientation o;
    BoundedSide side;
    switch (which) {
        case ManifoldBranch::WuMinus: o = Orientation::Up;   side = BoundedSide::BoundedLeft;  break;
        case ManifoldBranch::WsMinus: o = Orientation::Down; side = BoundedSide::BoundedRight; break;
        case ManifoldBranch::WuPlus:  o = Orientation::Down; side = BoundedSide::BoundedLeft;  break;
        case ManifoldBranch::WsPlus:  o = Orientation::Up;   side = BoundedSide::BoundedRight; break;
        default: throw BadInput("manifold_section: bad branch");
    }

    ManifoldSection sec;
    sec.which = which;
    sec.section_x = section_x;
    sec.eps = eps;
    sec.phi.resize(n);
    sec.u.resize(n);
    sec.p.resize(n);
    sec.in_window.resize(n);
    for (int i = 0; i < n; ++i) {
        double phi = phi_range.first + (phi_range.second - phi_range.first) * i / (n - 1);
        CorrectionValue cv = first_order_correction(f, phi, o, side, section_x, eps);
        sec.phi[i] = phi;
        sec.u[i] = heteroclinic(o, section_x, phi) + eps * cv.u1;
        sec.p[i] = heteroclinic_deriv(o, section_x, phi) + eps * cv.u1_x;
        sec.in_window[i] = !cv.outside_window;
    }
    return sec;
}

namespace {

bool segments_cross(double ax0, double ay0, double ax1, double ay1, double bx0, double by0,
                    double bx1, double by1, double& ta, double& tb) {
    double rx = ax1 - ax0, ry = ay1 - ay0;
    double sx = bx1 - bx0, sy = by1 - by0;
    double den = rx * sy - ry * sx;
    if (den == 0.0) return false;
    double qx = bx0 - ax0, qy = by0 - ay0;
    ta = (qx * sy - qy * sx) / den;
    tb = (qx * ry - qy * rx) / den;
    return ta >= 0.0 && ta <= 1.0 && tb >= 0.0 && tb <= 1.0;
}

struct CurveEval {
    const Forcing* f;
    double eps, section_x;
    Orientation o;
    BoundedSide side;

    void at(double phi, double& u, double& p) const {
        CorrectionValue cv = first_order_correction(*f, phi, o, side, section_x);
        u = heteroclinic(o, section_x, phi) + eps * cv.u1;
        p = heteroclinic_deriv(o, section_x, phi) + eps * cv.u1_x;
    }
};

CurveEval curve_eval_for(const ManifoldSection& s, const Forcing& f) {
    Orientation o;
    BoundedSide side;
    switch (s.which) {
        case ManifoldBranch::WuMinus: o = Orientation::Up;   side = BoundedSide::BoundedLeft;  break;
        case ManifoldBranch::WsMinus: o = Orientation::Down; side = BoundedSide::BoundedRight; break;
        case ManifoldBranch::WuPlus:  o = Orientation::Down; side = BoundedSide::BoundedLeft;  break;
        default:                      o = Orientation::Up;   side = BoundedSide::BoundedRight; break;
    }
    return CurveEval{&f, s.eps, s.section_x, o, side};
}

}  // namespace

std::vector<LobeIntersection> lobe_intersections(const ManifoldSection& a,
                                                 const ManifoldSection& b) {
    if (a.section_x != b.section_x || a.eps != b.eps)
        throw BadInput("lobe_intersections: sections must share section_x and eps");
    std::vector<LobeIntersection> out;
    for (std::size_t i = 0; i + 1 < a.phi.size(); ++i) {
        for (std::size_t j = 0; j + 1 < b.phi.size(); ++j) {
            double ta, tb;
            if (!segments_cross(a.u[i], a.p[i], a.u[i + 1], a.p[i + 1], b.u[j], b.p[j],
                                b.u[j + 1], b.p[j + 1], ta, tb))
                continue;
            LobeIntersection li;
            li.phi_a = a.phi[i] + ta * (a.phi[i + 1] - a.phi[i]);
            li.phi_b = b.phi[j] + tb * (b.phi[j + 1] - b.phi[j]);
            li.u = a.u[i] + ta * (a.u[i + 1] - a.u[i]);
            li.p = a.p[i] + ta * (a.p[i + 1] - a.p[i]);
            out.push_back(li);
        }
    }
    return out;
}

std::pair<ManifoldSection, ManifoldSection> two_front_lobe_sections(const Forcing& f,
                                                                    double eps,
                                                                    double section_x,
                                                                    int points_per_curve) {
    auto period = f.period();
    if (!period) throw BadInput("two_front_lobe_sections: forcing must be periodic");
    double X = *period;

    // Crossing depth: the unperturbed tails 2 e^{-sqrt2 w} meet the eps R/8
    // growth where e^{2 sqrt2 w} = 16 / (eps R_amp).
    MelnikovFn r_up = make_melnikov_quadrature(f, Orientation::Up);
    double r_amp = 0.0;
    for (int i = 0; i < 64; ++i)
        r_amp = std::max(r_amp, std::abs(r_up.value(i * X / 64.0)));
    if (r_amp == 0.0)
        throw BadInput("two_front_lobe_sections: Melnikov function vanishes identically");
    double w_star = std::log(16.0 / (eps * r_amp)) / (2.0 * kSqrt2);

    auto up = manifold_section(f, eps, ManifoldBranch::WuMinus, section_x,
                               {section_x - w_star - 0.55 * X, section_x - w_star + 0.55 * X},
                               points_per_curve);
    auto down = manifold_section(f, eps, ManifoldBranch::WsMinus, section_x,
                                 {section_x + w_star - 0.55 * X, section_x + w_star + 0.55 * X},
                                 points_per_curve);
    return {std::move(up), std::move(down)};
}

std::vector<LobeIntersection> two_front_lobe_intersections(const Forcing& f, double eps,
                                                           double section_x,
                                                           int points_per_curve) {
    MelnikovFn r_probe = make_melnikov_quadrature(f, Orientation::Up);
    {
        auto period = f.period();
        if (!period) throw BadInput("two_front_lobe_intersections: forcing must be periodic");
        double amp = 0.0;
        for (int i = 0; i < 64; ++i)
            amp = std::max(amp, std::abs(r_probe.value(i * *period / 64.0)));
        if (amp == 0.0) return {};
    }
    auto [up, down] = two_front_lobe_sections(f, eps, section_x, points_per_curve);
    std::vector<LobeIntersection> raw = lobe_intersections(up, down);

    // Newton polish on (phi_a, phi_b) and dedupe.
    CurveEval ea = curve_eval_for(up, f);
    CurveEval eb = curve_eval_for(down, f);
    std::vector<LobeIntersection> refined;
    for (auto li : raw) {
        double pa = li.phi_a, pb = li.phi_b;
        bool ok = true;
        for (int it = 0; it < 25; ++it) {
            double ua, va, ub, vb;
            ea.at(pa, ua, va);
            eb.at(pb, ub, vb);
            double g1 = ua - ub, g2 = va - vb;
            double h = 1e-6;
            double ua1, va1, ub1, vb1;
            ea.at(pa + h, ua1, va1);
            eb.at(pb + h, ub1, vb1);
            double j11 = (ua1 - ua) / h, j12 = -(ub1 - ub) / h;
            double j21 = (va1 - va) / h, j22 = -(vb1 - vb) / h;
            double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-16) { ok = false; break; }
            double dpa = (-g1 * j22 + g2 * j12) / det;
            double dpb = (-g2 * j11 + g1 * j21) / det;
            pa += dpa;
            pb += dpb;
            if (!std::isfinite(pa) || !std::isfinite(pb)) { ok = false; break; }
            if (std::abs(dpa) + std::abs(dpb) < 1e-11) break;
        }
        if (!ok) continue;
        double ua, va, ub, vb;
        ea.at(pa, ua, va);
        eb.at(pb, ub, vb);
        if (std::abs(ua - ub) + std::abs(va - vb) > 1e-8) continue;
        bool dup = false;
        for (const auto& r : refined)
            if (std::abs(r.phi_a - pa) < 1e-4 && std::abs(r.phi_b - pb) < 1e-4) {
                dup = true;
                break;
            }
        if (!dup) refined.push_back({pa, pb, ua, va});
    }
    std::sort(refined.begin(), refined.end(),
              [](const LobeIntersection& x, const LobeIntersection& y) {
                  return x.phi_a < y.phi_a;
              });
    return refined;
}

std::vector<BifurcationThreshold> bifurcation_scan(
    const std::function<Forcing(double)>& family, double eps,
    const std::vector<double>& parameter_grid, double section_x, int points_per_curve) {
    if (parameter_grid.size() < 2) throw BadInput("bifurcation_scan: need a parameter grid");

    auto count_at = [&](double alpha) -> int {
        Forcing f = family(alpha);
        return static_cast<int>(
            two_front_lobe_intersections(f, eps, section_x, points_per_curve).size());
    };

    auto odd_symmetric = [&](double alpha) {
        Forcing f = family(alpha);
        for (double x : {0.23, 1.71, -0.64}) {
            double a = eval_forcing(f, 0.37, -0.21, x);
            double b = eval_forcing(f, -0.37, 0.21, x);
            if (std::abs(a + b) > 1e-10 * (1.0 + std::abs(a))) return false;
        }
        return true;
    };

    std::vector<BifurcationThreshold> out;
    int prev = count_at(parameter_grid.front());
    for (std::size_t i = 1; i < parameter_grid.size(); ++i) {
        int cur = count_at(parameter_grid[i]);
        if (cur != prev) {
            double lo = parameter_grid[i - 1], hi = parameter_grid[i];
            int clo = prev;
            for (int it = 0; it < 24 && std::abs(hi - lo) > 1e-5; ++it) {
                double mid = 0.5 * (lo + hi);
                if (count_at(mid) == clo) lo = mid;
                else hi = mid;
            }
            BifurcationThreshold th;
            th.parameter = 0.5 * (lo + hi);
            th.count_before = prev;
            th.count_after = cur;
            th.label = (std::min(prev, cur) == 0 || !odd_symmetric(th.parameter))
                           ? BifurcationLabel::SaddleNode
                           : BifurcationLabel::Pitchfork;
            out.push_back(th);
        }
        prev = cur;
    }
    return out;
}

}  // namespace acfront
