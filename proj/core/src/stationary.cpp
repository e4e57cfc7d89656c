#include "acfront/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace acfront {

namespace {

constexpr double kInvNormSq = 1.0 / kFrontNormSq;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<std::complex<double>> jacobian_eigenvalues(const FrontState& s,
                                                       const NFrontSystem& sys) {
    Eigen::MatrixXd jac = nfront_jacobian(s, sys);
    Eigen::EigenSolver<Eigen::MatrixXd> es(jac);
    std::vector<std::complex<double>> out(jac.rows());
    for (int i = 0; i < jac.rows(); ++i) out[i] = es.eigenvalues()[i];
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.real() < b.real(); });
    return out;
}

double rhs_scale(const FrontState& s, const NFrontSystem& sys) {
    double scale = 0.0;
    int n = s.n();
    for (int j = 0; j < n; ++j) {
        double terms = s.eps.eps * std::abs(sys.r(s.orientation_of(j), s.positions[j]));
        if (j + 1 < n) terms += 16.0 * std::exp(-kSqrt2 * (s.positions[j + 1] - s.positions[j]));
        if (j > 0) terms += 16.0 * std::exp(-kSqrt2 * (s.positions[j] - s.positions[j - 1]));
        scale = std::max(scale, kInvNormSq * terms);
    }
    return scale;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool ordered(const std::vector<double>& v) {
    for (std::size_t j = 1; j < v.size(); ++j)
        if (!(v[j - 1] < v[j])) return false;
    return true;
}

}  // namespace

double StationaryFront::max_real_eigenvalue() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& l : eigenvalues) m = std::max(m, l.real());
    return m;
}

NewtonOutcome refine_equilibrium(std::vector<double> positions, Orientation first, double eps,
                                 const NFrontSystem& sys, int max_iter) {
    NewtonOutcome out;
    const int n = static_cast<int>(positions.size());
    const double tiny = 1e-280;

    auto residual_of = [&](const std::vector<double>& pos) {
        FrontState st(pos, first, Epsilon(eps));
        return nfront_rhs(st, sys);
    };

    const std::vector<double> seed = positions;
    const double max_move = 5.0;  // leading-order seeds land within O(1)

    std::vector<double> r = residual_of(positions);
    for (int it = 0; it < max_iter; ++it) {
        FrontState st(positions, first, Epsilon(eps));
        out.scale = rhs_scale(st, sys);
        double tol = 1e-10 * (1.0 + out.scale);
        if (inf_norm(r) <= tol) {
            out.converged = true;
            out.iterations = it;
            break;
        }
        Eigen::MatrixXd jac = nfront_jacobian(st, sys);
        Eigen::VectorXd rhs(n);
        for (int j = 0; j < n; ++j) rhs(j) = -r[j];
        // Row equilibration: the component scales span many hundred orders of
        // magnitude for far-out fronts, which plain LU cannot survive.
        // Components whose dynamics underflow entirely are frozen.
        for (int j = 0; j < n; ++j) {
            double row_scale = std::max(jac.row(j).cwiseAbs().maxCoeff(), std::abs(r[j]));
            if (row_scale < tiny) {
                jac.row(j).setZero();
                jac(j, j) = 1.0;
                rhs(j) = 0.0;
            } else {
                jac.row(j) /= row_scale;
                rhs(j) /= row_scale;
            }
        }
        Eigen::VectorXd step = jac.partialPivLu().solve(rhs);
        if (!step.allFinite()) throw NewtonDiverged("refine_equilibrium: singular Jacobian");

        double lambda = 1.0;
        double r0 = inf_norm(r);
        std::vector<double> trial(n);
        bool accepted = false;
        for (int half = 0; half < 12; ++half) {
            for (int j = 0; j < n; ++j) trial[j] = positions[j] + lambda * step(j);
            bool within = true;
            for (int j = 0; j < n; ++j) within &= std::abs(trial[j] - seed[j]) <= max_move;
            if (within && ordered(trial)) {
                std::vector<double> rt = residual_of(trial);
                if (inf_norm(rt) <= r0 * (1.0 - 1e-4 * lambda) + 1e-300) {
                    positions = trial;
                    r = std::move(rt);
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw NewtonDiverged("refine_equilibrium: line search failed at iteration " +
                                 std::to_string(it));
        out.iterations = it + 1;
    }
    out.positions = std::move(positions);
    out.residual = inf_norm(r);
    if (!out.converged) {
        FrontState st(out.positions, first, Epsilon(eps));
        out.scale = rhs_scale(st, sys);
        out.converged = out.residual <= 1e-10 * (1.0 + out.scale);
        if (!out.converged)
            throw NewtonDiverged("refine_equilibrium: no convergence after " +
                                 std::to_string(max_iter) + " iterations");
    }
    return out;
}

OneFrontScan one_front_find(const MelnikovFn& r, double phi_min, double phi_max, int n,
                            double eps) {
    OneFrontScan out;
    ZeroScan scan = melnikov_zero_scan(r, phi_min, phi_max, n);
    out.degenerate = scan.degenerate;
    for (const auto& z : scan.zeros) {
        StationaryFront f;
        f.positions = {z.phi_star};
        f.first = r.orientation();
        f.kind = OneFrontKind{z.phi_star};
        // lambda = eps * lambda_tilde = -eps (3 sqrt2 / 4) R'(phi*)
        f.eigenvalues = {std::complex<double>(-eps * kInvNormSq * z.r_prime, 0.0)};
        f.newton_residual = std::abs(r.value(z.phi_star));
        f.seed = "zero-scan";
        out.fronts.push_back(std::move(f));
    }
    return out;
}

StationaryFront two_front_solve(const MelnikovFn& r_up, const MelnikovFn& r_down, double eps,
                                std::pair<double, double> seed) {
    if (!(seed.first < seed.second))
        throw BadInput("two_front_solve: seed must have phi_up < phi_down");
    {
        double scale = 0.0;
        for (int i = 0; i <= 8; ++i) {
            double phi = seed.first + (seed.second - seed.first) * i / 8.0;
            scale = std::max({scale, std::abs(r_up.value(phi)), std::abs(r_down.value(phi))});
        }
        if (scale < 1e-13)
            throw NewtonDiverged(
                "two_front_solve: Melnikov functions vanish identically, no stationary pair");
    }
    NFrontSystem sys{r_up, r_down, false};
    NewtonOutcome nw =
        refine_equilibrium({seed.first, seed.second}, Orientation::Up, eps, sys, 50);

    StationaryFront f;
    f.positions = nw.positions;
    f.first = Orientation::Up;
    f.kind = TwoFrontKind{};
    f.newton_residual = nw.residual;
    {
        std::ostringstream os;
        os << "seed(" << seed.first << "," << seed.second << ")";
        f.seed = os.str();
    }
    FrontState st(f.positions, f.first, Epsilon(eps));
    f.eigenvalues = jacobian_eigenvalues(st, sys);
    return f;
}

TwoFrontStability two_front_eigenvalues(double phi_up, double phi_down, const MelnikovFn& r_up,
                                        const MelnikovFn& r_down, double eps) {
    if (!(phi_up < phi_down)) throw BadInput("two_front_eigenvalues: need phi_up < phi_down");
    double q = 16.0 * std::exp(-kSqrt2 * (phi_down - phi_up)) / eps;  // 16 e^{-sqrt2 (l_up+l_down)}
    double ru = r_up.value(phi_up);
    double rd = r_down.value(phi_down);
    double scale = std::abs(q) + std::abs(ru) + std::abs(rd);
    if (std::abs(ru - q) > 1e-6 * (1.0 + scale) || std::abs(rd + q) > 1e-6 * (1.0 + scale))
        throw ConditionNotSatisfied("two_front_eigenvalues: pair does not satisfy the "
                                    "two-front matching condition");

    double rpu = r_up.deriv(phi_up);
    double rpd = r_down.deriv(phi_down);
    double disc = (rpu - rpd) * (rpu - rpd) + 8.0 * q * q;
    double root = std::sqrt(disc);

    TwoFrontStability st;
    st.discriminant_d = disc;
    st.lambda1 = kInvNormSq * (kSqrt2 * q - 0.5 * (rpu + rpd) - 0.5 * root);
    st.lambda2 = kInvNormSq * (kSqrt2 * q - 0.5 * (rpu + rpd) + 0.5 * root);
    // gamma_minus = 1; gamma_plus follows from the continuity conditions.
    auto gamma_of = [&](double lam_bar) {
        return 1.0 - (lam_bar * kFrontNormSq + rpu) / (kSqrt2 * q);
    };
    st.gamma_plus_1 = gamma_of(st.lambda1);
    st.gamma_plus_2 = gamma_of(st.lambda2);
    return st;
}

double mu_star(int n_fronts) {
    if (n_fronts < 2) throw BadInput("mu_star: defined for N >= 2");
    return 1.0 - std::pow(2.0, -1.0 / (n_fronts - 1));
}

double chain_exponent(int n_fronts, double mu) {
    if (n_fronts < 1) throw BadInput("chain_exponent: N >= 1");
    return (std::pow(1.0 - mu, -(n_fronts - 1)) - 1.0) / mu;
}

namespace {

// One chain step: place the next front beyond psi_prev on the given side,
// solving eps |S_tail(psi)| = 16 exp(-|psi - psi_prev|) in log form.
double chain_step(const TailModel& tail, double eps, double psi_prev, int side) {
    double log16eps = std::log(16.0) - std::log(eps);
    if (const auto* e = std::get_if<ExponentialTail>(&tail)) {
        if (e->mu >= 1.0)
            throw BadInput("chain extensions require mu < 1");
        if (side > 0) {
            if (!(e->h_plus < 0.0))
                throw SignConditionFailed("right chain needs h_plus < 0");
            double c = std::log(std::abs(e->h_plus) * e->w_plus);
            return (log16eps - c + psi_prev) / (1.0 - e->mu);
        }
        if (!(e->h_minus > 0.0)) throw SignConditionFailed("left chain needs h_minus > 0");
        double c = std::log(e->h_minus * e->w_minus);
        return (psi_prev - (log16eps - c)) / (1.0 - e->mu);
    }
    const auto& a = std::get<AlgebraicTail>(tail);
    double lim = side > 0 ? a.limit_plus : a.limit_minus;
    if (side > 0 && !(lim < 0.0))
        throw SignConditionFailed("right chain needs htilde_plus < 0");
    if (side < 0 && !(lim > 0.0)) throw SignConditionFailed("left chain needs htilde_minus > 0");
    // Solve |psi - psi_prev| + p log|psi| = log(16/(eps |lim|)) by Newton.
    double target = log16eps - std::log(std::abs(lim));
    double gap = std::abs(std::log(eps));
    double psi = std::abs(psi_prev) + gap;
    for (int it = 0; it < 100; ++it) {
        double g = (psi - std::abs(psi_prev)) + a.p * std::log(psi) - target;
        double dg = 1.0 + a.p / psi;
        double step = g / dg;
        psi -= step;
        if (psi < std::abs(psi_prev) + 1.0) psi = std::abs(psi_prev) + 1.0;
        if (std::abs(step) < 1e-12 * (1.0 + psi)) break;
    }
    return side > 0 ? psi : -psi;
}

// Leading-order positions of the kind-1 core pair (psi_left < 0 < psi_right).
std::pair<double, double> kind1_core(const TailModel& tail, double eps) {
    double L = std::abs(std::log(eps));
    if (const auto* e = std::get_if<ExponentialTail>(&tail)) {
        if (!(e->h_plus < 0.0) || !(e->h_minus > 0.0))
            throw SignConditionFailed("kind-1 core needs h_plus < 0 < h_minus");
        double mu = e->mu;
        if (mu < 1.0) {
            double nu = 1.0 / (2.0 - mu);
            // l_minus + l_plus and (mu-1) l_minus + l_plus from the log balance.
            double s = std::log(std::abs(e->h_plus) * e->w_plus / (e->h_minus * e->w_minus)) / mu;
            double rr = std::log(16.0 / (e->h_minus * e->w_minus));
            double l_minus = (rr - s) / (mu - 2.0);
            double l_plus = s - l_minus;
            return {-nu * L + l_minus, nu * L + l_plus};
        }
        if (mu == 1.0) {
            // Unit-rate hill: solve eps psi e^{psi} = 1 for the symmetric pair.
            double psi = std::max(1.0, L - std::log(L));
            for (int it = 0; it < 100; ++it) {
                double g = std::log(eps) + std::log(psi) + psi;
                psi -= g / (1.0 / psi + 1.0);
                if (psi < 0.5) psi = 0.5;
            }
            return {-psi, psi};
        }
        // mu > 1: S ~ 4 hhat e^{-psi}; nu = 1.
        if (!(e->hhat_plus < 0.0) || !(e->hhat_minus > 0.0))
            throw SignConditionFailed("kind-1 core (mu > 1) needs hhat_plus < 0 < hhat_minus");
        // (i) log(4 hhat_minus) - psi2 + psi1 ... reduces to a linear system.
        double c_plus = std::log(4.0 * std::abs(e->hhat_plus));
        double c_minus = std::log(4.0 * e->hhat_minus);
        // eps 4 h- e^{psi1} = 16 e^{-(psi2-psi1)}; eps 4|h+| e^{-psi2} = same.
        // log eps + c_minus + psi1 = log16 - psi2 + psi1  => psi2 = L + log16 - c_minus
        // log eps + c_plus  - psi2 = log16 - psi2 + psi1  => psi1 = -L - log16 + c_plus
        double psi2 = L + std::log(16.0) - c_minus;
        double psi1 = -L - std::log(16.0) + c_plus;
        return {psi1, psi2};
    }
    const auto& a = std::get<AlgebraicTail>(tail);
    if (!(a.limit_plus < 0.0) || !(a.limit_minus > 0.0))
        throw SignConditionFailed("kind-1 core needs htilde_plus < 0 < htilde_minus");
    // psi1 = -x, psi2 = c x with c = (|L+|/L-)^{1/p}; solve the scalar balance.
    double c = std::pow(std::abs(a.limit_plus) / a.limit_minus, 1.0 / a.p);
    double x = L / (1.0 + c);
    for (int it = 0; it < 100; ++it) {
        // log(eps L-) - p log x = log16 - (1+c) x
        double g = std::log(eps * a.limit_minus) - a.p * std::log(x) - std::log(16.0) +
                   (1.0 + c) * x;
        double dg = -a.p / x + (1.0 + c);
        double step = g / dg;
        x -= step;
        if (x < 0.5) x = 0.5;
        if (std::abs(step) < 1e-13 * (1.0 + x)) break;
    }
    return {-x, c * x};
}

}  // namespace

LocalizedSeedPlan localized_seed(int kind, int n_fronts, const TailModel& tail, double eps,
                                 std::optional<double> psi_star, int left_chain) {
    if (kind < 1 || kind > 4) throw BadInput("localized_seed: kind must be 1..4");
    if (n_fronts < 2) throw BadInput("localized_seed: N >= 2");
    if (kind >= 2 && !psi_star)
        throw BadInput("localized_seed: kinds 2-4 need the Melnikov zero psi_star");
    if (kind == 4 && n_fronts < 3) throw BadInput("localized_seed: kind 4 needs N >= 3");

    LocalizedSeedPlan plan;
    plan.kind = kind;
    const double L = std::abs(std::log(eps));

    if (const auto* e = std::get_if<ExponentialTail>(&tail)) {
        plan.exponential = true;
        plan.mu_or_p = e->mu;
    } else {
        plan.exponential = false;
        plan.mu_or_p = std::get<AlgebraicTail>(tail).p;
        plan.theta2 = 1.0 / (L + plan.mu_or_p * std::log(L));
    }
    plan.mu_star_n = mu_star(n_fronts);
    if (plan.exponential && plan.mu_or_p >= plan.mu_star_n)
        plan.warnings.push_back("mu >= mu*(N): leading-order seed emitted beyond the "
                                "validity bound of the reduction");

    // Number of fronts chained to the left of the core.
    int core_size = kind == 1 ? 2 : 1;
    int chains = n_fronts - core_size;
    int lc;
    switch (kind) {
        case 1: lc = left_chain < 0 ? 0 : left_chain; break;
        case 2: lc = 0; break;
        case 3: lc = chains; break;
        default: lc = left_chain < 0 ? 1 : left_chain; break;
    }
    if (lc < 0 || lc > chains) throw BadInput("localized_seed: bad left_chain");
    if (kind == 2 && lc != 0) throw BadInput("localized_seed: kind 2 has no left chain");
    if (kind == 3 && lc != chains) throw BadInput("localized_seed: kind 3 is all left chain");
    if (kind == 4 && (lc == 0 || lc == chains))
        throw BadInput("localized_seed: kind 4 needs fronts on both sides of the zero");

    std::vector<double> core;
    if (kind == 1) {
        auto [a, b] = kind1_core(tail, eps);
        core = {a, b};
    } else {
        core = {*psi_star};
    }

    std::vector<double> psi(core.begin(), core.end());
    for (int i = 0; i < chains - lc; ++i)
        psi.push_back(chain_step(tail, eps, psi.back(), +1));
    for (int i = 0; i < lc; ++i)
        psi.insert(psi.begin(), chain_step(tail, eps, psi.front(), -1));

    plan.psi = psi;
    plan.nu.resize(psi.size());
    plan.ell.resize(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        plan.nu[j] = psi[j] / L;
        plan.ell[j] = psi[j] - std::round(plan.nu[j] * 4.0) / 4.0 * L;
    }
    return plan;
}

namespace {

// Exact one-front chain extension: place the next front beyond psi_prev so
// that eps |S| balances the neighbour coupling 16 e^{-gap}. Uses the actual
// Melnikov function while it is representable and the tail model beyond.
double extend_front_exact(const MelnikovFn& r, const TailModel& tail, double eps,
                          double psi_prev, int side) {
    const double L = std::abs(std::log(eps));
    auto log_abs_s = [&](double psi) {
        double value = r.value(psi / kSqrt2);
        if (std::abs(value) > 1e-280) return std::log(std::abs(value));
        return tail_log_abs(tail, psi);
    };
    // g(psi) = log(16 e^{-gap}) - log(eps |S|), strictly decreasing in depth.
    auto g = [&](double psi) {
        double gap = side > 0 ? psi - psi_prev : psi_prev - psi;
        return std::log(16.0) - gap - std::log(eps) - log_abs_s(psi);
    };
    double lo_depth = 1.0;
    auto at = [&](double depth) { return side > 0 ? psi_prev + depth : psi_prev - depth; };
    if (!(g(at(lo_depth)) > 0.0))
        throw NewtonDiverged("extend_front_exact: balance not bracketed");
    // Chain gaps grow geometrically with the level; expand until the far
    // side of the root is in hand.
    double hi_depth = 2.0 * L + 10.0;
    while (g(at(hi_depth)) > 0.0) {
        hi_depth *= 1.6;
        if (hi_depth > 2e5)
            throw NewtonDiverged("extend_front_exact: no balance within reach");
    }
    for (int it = 0; it < 200 && hi_depth - lo_depth > 1e-12 * (1.0 + hi_depth); ++it) {
        double mid = 0.5 * (lo_depth + hi_depth);
        if (g(at(mid)) > 0.0) lo_depth = mid;
        else hi_depth = mid;
    }
    return at(0.5 * (lo_depth + hi_depth));
}

// Staged positions for one localized pattern: refine the core exactly, then
// grow the chains one front at a time, each solving its own balance.
std::vector<double> staged_positions(const LocalizedKind& kind, const LocalizedSeedPlan& plan,
                                     const MelnikovFn& r, const TailModel& tail, double eps,
                                     const NFrontSystem& sys) {
    std::vector<double> psi;
    if (kind.kind == 1) {
        // Core pair from the leading-order seed, refined as its own system.
        LocalizedSeedPlan core_plan = localized_seed(1, 2, tail, eps);
        std::vector<double> core_phi{core_plan.psi[0] / kSqrt2, core_plan.psi[1] / kSqrt2};
        NewtonOutcome nw = refine_equilibrium(core_phi, Orientation::Up, eps, sys, 60);
        psi = {nw.positions[0] * kSqrt2, nw.positions[1] * kSqrt2};
    } else {
        psi = {*kind.psi_star};
    }
    for (int i = 0; i < kind.right_chain; ++i)
        psi.push_back(extend_front_exact(r, tail, eps, psi.back(), +1));
    for (int i = 0; i < kind.left_chain; ++i)
        psi.insert(psi.begin(), extend_front_exact(r, tail, eps, psi.front(), -1));
    (void)plan;
    return psi;
}

}  // namespace

EnumerationReport enumerate_stationary_localized(const Topography& topo, double eps,
                                                 int n_fronts) {
    if (n_fronts < 1) throw BadInput("enumerate_stationary_localized: N >= 1");
    const bool is_exp = std::holds_alternative<ExpHill>(topo.shape);
    const bool is_alg = std::holds_alternative<AlgHill>(topo.shape);
    if (!is_exp && !is_alg)
        throw BadInput("enumerate_stationary_localized: topo must be ExpHill or AlgHill");

    NFrontSystem sys = make_topographic_system(topo);
    EnumerationReport report;

    // Zeros of S live where the topography is O(1).
    ZeroScan scan = melnikov_zero_scan(sys.up, -9.0, 9.0, 1601);
    report.melnikov_zero_count = static_cast<int>(scan.zeros.size());

    TailModel tail = is_exp
                         ? tail_constants_exponential(topo, std::get<ExpHill>(topo.shape).mu)
                         : tail_constants_algebraic(topo, std::get<AlgHill>(topo.shape).p);

    if (n_fronts == 1) {
        OneFrontScan one = one_front_find(sys.up, -9.0, 9.0, 1601, eps);
        report.fronts = std::move(one.fronts);
        return report;
    }

    bool right_ok, left_ok;
    if (const auto* e = std::get_if<ExponentialTail>(&tail)) {
        right_ok = e->h_plus < 0.0;
        left_ok = e->h_minus > 0.0;
        if (e->mu >= 1.0) { right_ok = false; left_ok = false; }  // chains need mu < 1
    } else {
        const auto& a = std::get<AlgebraicTail>(tail);
        right_ok = a.limit_plus < 0.0;
        left_ok = a.limit_minus > 0.0;
    }

    struct SeedSpec {
        LocalizedKind kind;
        std::optional<double> psi_star;
        int left_chain;
    };
    std::vector<SeedSpec> specs;
    if (right_ok && left_ok) {
        for (int lc = 0; lc <= n_fronts - 2; ++lc)
            specs.push_back({LocalizedKind{1, lc, n_fronts - 2 - lc, std::nullopt},
                             std::nullopt, lc});
    }
    for (const auto& z : scan.zeros) {
        double psi_star = kSqrt2 * z.phi_star;
        for (int lc = 0; lc <= n_fronts - 1; ++lc) {
            if (lc == 0 && !right_ok) continue;
            if (lc == n_fronts - 1 && !left_ok) continue;
            if (lc > 0 && lc < n_fronts - 1 && !(right_ok && left_ok)) continue;
            int kind = lc == 0 ? 2 : (lc == n_fronts - 1 ? 3 : 4);
            specs.push_back({LocalizedKind{kind, lc, n_fronts - 1 - lc, psi_star}, psi_star, lc});
        }
    }

    const double dedupe_tol = 1e-6 * std::abs(std::log(eps));
    for (const auto& spec : specs) {
        std::ostringstream seed_desc;
        seed_desc << "kind" << spec.kind.kind << " lc" << spec.left_chain;
        try {
            LocalizedSeedPlan plan = localized_seed(spec.kind.kind, n_fronts, tail, eps,
                                                    spec.psi_star, spec.left_chain);
            std::vector<double> psi = staged_positions(spec.kind, plan, sys.up, tail, eps, sys);
            std::vector<double> phi(psi.size());
            for (std::size_t j = 0; j < psi.size(); ++j) phi[j] = psi[j] / kSqrt2;
            NewtonOutcome nw = refine_equilibrium(phi, Orientation::Up, eps, sys, 80);

            bool dup = false;
            for (const auto& f : report.fronts) {
                double dev = 0.0;
                for (std::size_t j = 0; j < f.positions.size(); ++j)
                    dev = std::max(dev, std::abs(f.positions[j] - nw.positions[j]));
                if (dev < dedupe_tol) { dup = true; break; }
            }
            if (dup) continue;

            StationaryFront f;
            f.positions = nw.positions;
            f.first = Orientation::Up;
            f.kind = spec.kind;
            f.newton_residual = nw.residual;
            f.seed = seed_desc.str();
            f.warnings = plan.warnings;
            FrontState st(f.positions, f.first, Epsilon(eps));
            f.eigenvalues = jacobian_eigenvalues(st, sys);
            if (n_fronts >= 2 && !(f.max_real_eigenvalue() > 0.0))
                f.warnings.push_back("expected at least one unstable eigenvalue");
            report.fronts.push_back(std::move(f));
        } catch (const NumericError& err) {
            report.failures.push_back(seed_desc.str() + ": " + err.what());
        }
    }

    std::sort(report.fronts.begin(), report.fronts.end(),
              [](const StationaryFront& a, const StationaryFront& b) {
                  return a.positions.front() < b.positions.front();
              });
    return report;
}

PeriodicEnumeration enumerate_stationary_periodic(const Topography& topo, double eps,
                                                  int n_fronts, int window) {
    auto period = topo.period();
    if (!period) throw BadInput("enumerate_stationary_periodic: topography is not periodic");
    if (n_fronts < 1 || window < 1) throw BadInput("enumerate_stationary_periodic: bad inputs");

    const double X = *period;
    const double Y = kSqrt2 * X;
    const double L = std::abs(std::log(eps));

    PeriodicEnumeration out;
    out.rho = window * Y / L;
    if (out.rho < 1.0)
        throw SeparationTooSmall("enumerate_stationary_periodic: spacing gives rho = " +
                                 std::to_string(out.rho) + " < 1, no stationary pattern exists");

    NFrontSystem sys = make_topographic_system(topo);
    ZeroScan scan = melnikov_zero_scan(sys.up, 0.0, X, 801);
    // Drop a duplicate zero at the right period edge.
    while (scan.zeros.size() > 1 &&
           std::abs(scan.zeros.back().phi_star - scan.zeros.front().phi_star - X) < 1e-6)
        scan.zeros.pop_back();
    int K = static_cast<int>(scan.zeros.size());
    out.zeros_per_period = K;
    if (K == 0) return out;

    long total = 1;
    for (int j = 0; j < n_fronts; ++j) {
        total *= K;
        if (total > 4096) throw BadInput("enumerate_stationary_periodic: K^N too large");
    }

    for (long code = 0; code < total; ++code) {
        std::vector<int> idx(n_fronts);
        long c = code;
        for (int j = 0; j < n_fronts; ++j) { idx[j] = static_cast<int>(c % K); c /= K; }

        std::vector<double> phi(n_fronts);
        std::vector<long> periods(n_fronts);
        for (int j = 0; j < n_fronts; ++j) {
            periods[j] = static_cast<long>(j) * window;
            phi[j] = scan.zeros[idx[j]].phi_star + periods[j] * X;
        }
        if (!ordered(phi)) continue;

        StationaryFront f;
        f.first = Orientation::Up;
        f.kind = PeriodicGridKind{idx, periods};
        f.seed = "periodic-grid";
        try {
            NewtonOutcome nw = refine_equilibrium(phi, Orientation::Up, eps, sys, 60);
            bool wandered = false;
            for (int j = 0; j < n_fronts; ++j)
                wandered |= std::abs(nw.positions[j] - phi[j]) > 0.25 * X;
            if (wandered) {
                out.failures.push_back("seed left the zero lattice");
                continue;
            }
            f.positions = nw.positions;
            f.newton_residual = nw.residual;
        } catch (const NumericError& err) {
            out.failures.push_back(err.what());
            continue;
        }
        FrontState st(f.positions, f.first, Epsilon(eps));
        f.eigenvalues = jacobian_eigenvalues(st, sys);

        bool stable = true;
        double max_dev = 0.0;
        for (int j = 0; j < n_fronts; ++j) {
            double rp = scan.zeros[idx[j]].r_prime;
            if (!(rp > 0.0)) stable = false;
            // Theorem prediction in tau units: lambda = -eps S'(psi*) = -eps R'(phi*)/sqrt2.
            double predicted = -eps * rp / kSqrt2;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& l : f.eigenvalues) {
                double actual_tau = l.real() * kFrontNormSq / kSqrt2;
                best = std::min(best, std::abs(actual_tau - predicted) / std::abs(predicted));
            }
            max_dev = std::max(max_dev, best);
        }
        out.stable.push_back(stable);
        out.eigenvalue_dev.push_back(max_dev);
        out.fronts.push_back(std::move(f));
    }
    return out;
}

// --- (d, s) two-front analysis for periodic forcing ----------------------------

namespace {

struct DsSystem {
    double A, B, k, R;

    void rhs(double d, double s, double& fd, double& fs) const {
        double th = R + 0.5 * k * d;
        fd = -A * std::sin(th) * std::cos(0.5 * k * s) +
             B * std::cos(th) * std::sin(0.5 * k * s) - std::exp(-kSqrt2 * d);
        fs = -A * std::cos(th) * std::sin(0.5 * k * s) +
             B * std::sin(th) * std::cos(0.5 * k * s);
    }
    void jacobian(double d, double s, double j[2][2]) const {
        double th = R + 0.5 * k * d;
        double ch = std::cos(th), sh = std::sin(th);
        double cs = std::cos(0.5 * k * s), ss = std::sin(0.5 * k * s);
        j[0][0] = -0.5 * k * A * ch * cs - 0.5 * k * B * sh * ss + kSqrt2 * std::exp(-kSqrt2 * d);
        j[0][1] = 0.5 * k * A * sh * ss + 0.5 * k * B * ch * cs;
        j[1][0] = 0.5 * k * A * sh * ss + 0.5 * k * B * ch * cs;
        j[1][1] = -0.5 * k * A * ch * cs - 0.5 * k * B * sh * ss;
    }
};

FixedPointType classify(double l1, double l2) {
    if (l1 * l2 < 0.0) return FixedPointType::Saddle;
    if (l1 < 0.0 && l2 < 0.0) return FixedPointType::StableNode;
    if (l1 > 0.0 && l2 > 0.0) return FixedPointType::UnstableNode;
    return FixedPointType::Degenerate;
}

std::vector<DsFixedPoint> ds_fixed_points(const DsSystem& sys, double d_lo, double d_hi) {
    std::vector<DsFixedPoint> points;
    double s_period = 4.0 * M_PI / sys.k;
    int nd = 160, ns = 160;
    for (int id = 0; id <= nd; ++id) {
        for (int is = 0; is <= ns; ++is) {
            double d = d_lo + (d_hi - d_lo) * id / nd;
            double s = s_period * is / ns;
            // Newton from the grid point.
            bool ok = true;
            for (int it = 0; it < 60; ++it) {
                double fd, fs, j[2][2];
                sys.rhs(d, s, fd, fs);
                sys.jacobian(d, s, j);
                double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                if (std::abs(det) < 1e-14) { ok = false; break; }
                double dd = (-fd * j[1][1] + fs * j[0][1]) / det;
                double ds = (-fs * j[0][0] + fd * j[1][0]) / det;
                d += dd;
                s += ds;
                if (!std::isfinite(d) || !std::isfinite(s)) { ok = false; break; }
                if (std::abs(dd) + std::abs(ds) < 1e-13) break;
            }
            double fd, fs;
            sys.rhs(d, s, fd, fs);
            if (!ok || std::abs(fd) + std::abs(fs) > 1e-10) continue;
            if (d < d_lo - 1e-9 || d > d_hi + 1e-9) continue;
            s = std::fmod(std::fmod(s, s_period) + s_period, s_period);
            bool dup = false;
            for (const auto& p : points)
                if (std::abs(p.d - d) < 1e-6 &&
                    (std::abs(p.s - s) < 1e-6 || std::abs(std::abs(p.s - s) - s_period) < 1e-6)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            double j[2][2];
            sys.jacobian(d, s, j);
            double tr = j[0][0] + j[1][1];
            double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            double disc = tr * tr - 4.0 * det;
            double l1, l2;
            if (disc >= 0.0) {
                l1 = 0.5 * (tr - std::sqrt(disc));
                l2 = 0.5 * (tr + std::sqrt(disc));
            } else {
                l1 = l2 = 0.5 * tr;  // complex pair: classify by the real part
            }
            points.push_back({d, s, classify(l1, l2), l1, l2});
        }
    }
    std::sort(points.begin(), points.end(), [](const DsFixedPoint& a, const DsFixedPoint& b) {
        return a.d != b.d ? a.d < b.d : a.s < b.s;
    });
    return points;
}

}  // namespace

PeriodicTwoFrontBifurcation periodic_two_front_bifurcation(double A, double B, double k,
                                                           double eps,
                                                           std::optional<double> track_d) {
    if (!(k > 0.0)) throw BadInput("periodic_two_front_bifurcation: k > 0");
    if (A == 0.0) throw BadInput("periodic_two_front_bifurcation: A must be nonzero");

    PeriodicTwoFrontBifurcation out;
    const double L = std::abs(std::log(eps));
    out.phase_r = std::fmod(k * L / (2.0 * kSqrt2), 2.0 * M_PI);
    if (out.phase_r < 0.0) out.phase_r += 2.0 * M_PI;

    // Arches of sin(R + k d / 2) between consecutive nodes; on each one the
    // (a)-family opens through a tangency at A_SN(arch) and restructures at
    // the arch extremum where |A_PF| = e^{-sqrt2 d_ext}.
    const double arch_w = 2.0 * M_PI / k;
    auto arch_base = [&](long m) { return (m * M_PI - out.phase_r) * 2.0 / k; };

    auto arch_sn = [&](long m) {
        double a = arch_base(m) + 1e-9, b = arch_base(m + 1) - 1e-9;
        auto g = [&](double d) {
            double sn = std::abs(std::sin(out.phase_r + 0.5 * k * d));
            return sn < 1e-12 ? 1e300 : std::exp(-kSqrt2 * d) / sn;
        };
        const double gr = 0.6180339887498949;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        for (int it = 0; it < 200; ++it) {
            if (g(c1) < g(c2)) { b = c2; c2 = c1; c1 = b - gr * (b - a); }
            else { a = c1; c1 = c2; c2 = a + gr * (b - a); }
        }
        return g(0.5 * (a + b));
    };

    // Pick the tracked arch: the one containing track_d, or else the arch
    // whose tangency opened last below the given |A|.
    double d_c = -std::log(std::abs(A)) / kSqrt2;
    long m0 = static_cast<long>(std::floor((d_c - arch_base(0)) / arch_w)) - 4;
    long chosen = m0;
    if (track_d) {
        chosen = static_cast<long>(std::floor((*track_d - arch_base(0)) / arch_w));
    } else {
        double best = 0.0;
        bool found = false;
        double upcoming = std::numeric_limits<double>::infinity();
        long upcoming_m = m0;
        for (long m = m0; m < m0 + 12; ++m) {
            double asn = arch_sn(m);
            if (asn <= std::abs(A) && asn > best) { best = asn; chosen = m; found = true; }
            if (asn > std::abs(A) && asn < upcoming) { upcoming = asn; upcoming_m = m; }
        }
        if (!found) chosen = upcoming_m;
    }

    double sgn = A > 0 ? 1.0 : -1.0;
    out.a_sn = sgn * arch_sn(chosen);
    out.d_lo = arch_base(chosen) + 1e-6;
    out.d_hi = arch_base(chosen + 1) - 1e-6;
    out.arch_d = 0.5 * (out.d_lo + out.d_hi);

    if (B == 0.0) {
        double d_ext = (chosen * M_PI + 0.5 * M_PI - out.phase_r) * 2.0 / k;
        out.a_pf = sgn * std::exp(-kSqrt2 * d_ext);
        out.a_sn2 = kNan;
    } else {
        // Broken symmetry: both transitions are saddle-nodes; locate them by
        // bisection on the fixed-point count inside the arch window.
        DsSystem probe{0.0, B, k, out.phase_r};
        auto count_at = [&](double a_val) {
            probe.A = a_val;
            return ds_fixed_points(probe, out.d_lo, out.d_hi).size();
        };
        auto bisect_jump = [&](double lo, double hi, std::size_t base) -> double {
            double step = (hi - lo) / 48.0;
            double prev = lo;
            for (double a = lo + step; a <= hi * (1.0 + 1e-12); a += step) {
                if (count_at(sgn * a) > base) {
                    double blo = prev, bhi = a;
                    for (int it = 0; it < 40; ++it) {
                        double mid = 0.5 * (blo + bhi);
                        if (count_at(sgn * mid) > base) bhi = mid;
                        else blo = mid;
                    }
                    return sgn * 0.5 * (blo + bhi);
                }
                prev = a;
            }
            return kNan;
        };
        double guess = std::abs(out.a_sn);
        out.a_sn = bisect_jump(0.3 * guess, 2.0 * guess, 0);
        double base_from = std::isnan(out.a_sn) ? guess : std::abs(out.a_sn);
        std::size_t base = count_at(sgn * base_from * 1.02);
        out.a_sn2 = bisect_jump(base_from * 1.02, base_from * 6.0, base);
        out.a_pf = kNan;
    }

    DsSystem sys{A, B, k, out.phase_r};
    out.fixed_points = ds_fixed_points(sys, out.d_lo, out.d_hi);
    return out;
}

}  // namespace acfront
