#include "acfront/pde.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace acfront {

namespace {

void add_laplacian(const std::vector<double>& u, double dx, std::vector<double>& out) {
    int n = static_cast<int>(u.size());
    double inv = 1.0 / (dx * dx);
    out[0] = 2.0 * (u[1] - u[0]) * inv;
    for (int i = 1; i + 1 < n; ++i) out[i] = ((u[i - 1] + u[i + 1]) - 2.0 * u[i]) * inv;
    out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * inv;
}

double ux_at(const std::vector<double>& u, int i, double dx) {
    int n = static_cast<int>(u.size());
    if (i == 0) return (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
    if (i == n - 1) return (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dx);
    return (u[i + 1] - u[i - 1]) / (2.0 * dx);
}

// Tridiagonal LU with partial pivoting (three bands in, extra superdiagonal
// of fill), plus the matching forward/back substitution.
struct TriLu {
    std::vector<double> dl, d, du, du2;
    std::vector<int> piv;

    void factor() {
        int n = static_cast<int>(d.size());
        piv.assign(n, 0);
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                piv[i] = i;
                if (d[i] != 0.0) {
                    double fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
                if (i + 2 < n) du2[i] = 0.0;
            } else {
                piv[i] = i + 1;
                double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
            }
        }
        if (d[n - 1] == 0.0) throw NotConverged("TriLu: singular factorization");
    }

    void solve(std::vector<double>& b) const {
        int n = static_cast<int>(d.size());
        for (int i = 0; i + 1 < n; ++i) {
            if (piv[i] == i) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (int i = n - 3; i >= 0; --i)
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
};

struct TridiagOperator {
    std::vector<double> lower, diag, upper;
};

// Linearization about u*: Laplacian + diag(1 - 3u*^2 + eps F_u) + eps F_v d/dx.
TridiagOperator assemble_linearization(const Field& steady, const Forcing& forcing,
                                       double eps) {
    int n = steady.size();
    double dx = steady.grid.dx();
    double inv2 = 1.0 / (dx * dx);
    TridiagOperator op;
    op.lower.assign(n - 1, 0.0);
    op.diag.assign(n, 0.0);
    op.upper.assign(n - 1, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = steady.grid.x(i);
        double ux = ux_at(steady.values, i, dx);
        ForcingPartials pp = forcing_partials(forcing, steady[i], ux, x);
        op.diag[i] = -2.0 * inv2 + 1.0 - 3.0 * steady[i] * steady[i] + eps * pp.f_u;
        double adv = eps * pp.f_v / (2.0 * dx);
        if (i == 0) {
            op.upper[0] = 2.0 * inv2;  // mirrored ghost; centered d/dx vanishes
        } else if (i == n - 1) {
            op.lower[n - 2] = 2.0 * inv2;
        } else {
            op.lower[i - 1] = inv2 - adv;
            op.upper[i] = inv2 + adv;
        }
    }
    return op;
}

std::vector<FrontSample> raw_crossings(const Field& f) {
    std::vector<FrontSample> out;
    int n = f.size();
    double dx = f.grid.dx();
    for (int i = 0; i < n; ++i) {
        if (f[i] == 0.0) {
            double slope = ux_at(f.values, i, dx);
            out.push_back({f.grid.x(i), slope >= 0 ? Orientation::Up : Orientation::Down});
            continue;
        }
        // strict sign change between nonzero neighbours; exact zeros are
        // reported once by the branch above
        if (i + 1 < n && f[i + 1] != 0.0 && (f[i] < 0.0) != (f[i + 1] < 0.0)) {
            double a = f[i], b = f[i + 1];
            double pos = f.grid.x(i) + dx * a / (a - b);
            out.push_back({pos, b > a ? Orientation::Up : Orientation::Down});
        }
    }
    return out;
}

}  // namespace

Field semidiscretize(const Field& u, const Forcing& forcing, const Epsilon& eps) {
    int n = u.size();
    double dx = u.grid.dx();
    Field out(u.grid);
    add_laplacian(u.values, dx, out.values);
    for (int i = 0; i < n; ++i) {
        double x = u.grid.x(i);
        double ux = ux_at(u.values, i, dx);
        out[i] += u[i] - u[i] * u[i] * u[i] +
                  eps.eps * eval_forcing(forcing, u[i], ux, x);
    }
    return out;
}

std::vector<FrontSample> track_fronts(const Field& field) {
    std::vector<FrontSample> raw = raw_crossings(field);
    double merge_dist = 3.0 * field.grid.dx();
    std::vector<FrontSample> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i;
        while (j + 1 < raw.size() && raw[j + 1].position - raw[j].position < merge_dist) ++j;
        std::size_t count = j - i + 1;
        if (count % 2 == 1) {
            // Net sign change survives: keep the middle crossing.
            out.push_back(raw[i + count / 2]);
        }
        i = j + 1;
    }
    return out;
}

PdeRunResult run(const PdeRunConfig& cfg) {
    const Grid1D& g = cfg.grid;
    int n = g.n;
    double dx = g.dx();
    if (cfg.ic.size() != n) throw BadInput("run: initial condition does not match grid");
    if (!(cfg.t_end > 0.0)) throw BadInput("run: t_end must be > 0");

    bool imex = std::holds_alternative<ImexTheta>(cfg.scheme);
    double theta = imex ? std::get<ImexTheta>(cfg.scheme).theta : 0.0;
    if (imex && (theta < 0.5 || theta > 1.0)) throw BadInput("run: theta must be in [0.5, 1]");
    double dt = cfg.dt.value_or(imex ? 0.1 : 0.2 * dx * dx);

    std::vector<double> u = cfg.ic.values;
    std::vector<double> lap(n), stage(n), k1(n), k2(n), k3(n), k4(n), work(n);

    TriLu lu;
    if (imex) {
        double c = theta * dt / (dx * dx);
        lu.d.assign(n, 1.0 + 2.0 * c);
        lu.dl.assign(n - 1, -c);
        lu.du.assign(n - 1, -c);
        lu.du[0] = -2.0 * c;
        lu.dl[n - 2] = -2.0 * c;
        lu.factor();
    }

    auto reaction = [&](const std::vector<double>& v, std::vector<double>& out) {
        for (int i = 0; i < n; ++i) {
            double x = g.x(i);
            double ux = ux_at(v, i, dx);
            out[i] = v[i] - v[i] * v[i] * v[i] +
                     cfg.eps.eps * eval_forcing(cfg.forcing, v[i], ux, x);
        }
    };
    auto full_rhs = [&](const std::vector<double>& v, std::vector<double>& out) {
        add_laplacian(v, dx, out);
        for (int i = 0; i < n; ++i) {
            double x = g.x(i);
            double ux = ux_at(v, i, dx);
            out[i] += v[i] - v[i] * v[i] * v[i] +
                      cfg.eps.eps * eval_forcing(cfg.forcing, v[i], ux, x);
        }
    };

    PdeRunResult res;
    double t = 0.0;
    long total_steps = static_cast<long>(std::ceil(cfg.t_end / dt));
    long output_stride = std::max<long>(1, static_cast<long>(std::round(cfg.output_every / dt)));

    std::vector<std::vector<FrontSample>> recent;  // speed window for pin detection
    std::vector<bool> pinned_already;

    auto capture = [&](double time) {
        Field f(g, u);
        for (double v : u)
            if (!std::isfinite(v)) throw NaNDetected("run: NaN at t=" + std::to_string(time));
        auto fronts = track_fronts(f);

        if (!res.tracks.empty() && fronts.size() + 2 <= res.tracks.back().size()) {
            // A pair vanished since the previous frame: locate it by the
            // closest previous gap.
            const auto& prev = res.tracks.back();
            int best_i = 0;
            double best_gap = 1e300;
            for (std::size_t i2 = 0; i2 + 1 < prev.size(); ++i2) {
                double gap = prev[i2 + 1].position - prev[i2].position;
                if (gap < best_gap) {
                    best_gap = gap;
                    best_i = static_cast<int>(i2);
                }
            }
            res.annihilations.push_back({time, best_i, best_i + 1});
        }

        res.track_times.push_back(time);
        res.tracks.push_back(fronts);
        res.snapshot_times.push_back(time);
        res.snapshots.push_back(std::move(f));

        // Pinning: sustained slow motion over the trailing window.
        recent.push_back(res.tracks.back());
        if (static_cast<int>(recent.size()) > cfg.pinned_frames + 1) recent.erase(recent.begin());
        pinned_already.resize(std::max(pinned_already.size(), res.tracks.back().size()), false);
        if (static_cast<int>(recent.size()) == cfg.pinned_frames + 1) {
            std::size_t m = recent.front().size();
            bool counts_match = true;
            for (const auto& fr : recent) counts_match &= fr.size() == m;
            if (counts_match) {
                for (std::size_t idx = 0; idx < m; ++idx) {
                    if (pinned_already[idx]) continue;
                    double vmax = 0.0;
                    for (std::size_t w = 1; w < recent.size(); ++w) {
                        double dt_frames =
                            res.track_times[res.track_times.size() - recent.size() + w] -
                            res.track_times[res.track_times.size() - recent.size() + w - 1];
                        vmax = std::max(vmax,
                                        std::abs(recent[w][idx].position -
                                                 recent[w - 1][idx].position) /
                                            dt_frames);
                    }
                    if (vmax < cfg.pinned_speed) {
                        pinned_already[idx] = true;
                        res.pinned.push_back(
                            {time, static_cast<int>(idx), recent.back()[idx].position});
                    }
                }
            }
        }
    };

    capture(0.0);
    for (long step = 1; step <= total_steps; ++step) {
        if (imex) {
            add_laplacian(u, dx, lap);
            reaction(u, work);
            for (int i = 0; i < n; ++i)
                stage[i] = u[i] + dt * ((1.0 - theta) * lap[i] + work[i]);
            lu.solve(stage);
            u = stage;
        } else {
            full_rhs(u, k1);
            for (int i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dt * k1[i];
            full_rhs(stage, k2);
            for (int i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dt * k2[i];
            full_rhs(stage, k3);
            for (int i = 0; i < n; ++i) stage[i] = u[i] + dt * k3[i];
            full_rhs(stage, k4);
            for (int i = 0; i < n; ++i)
                u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t = step * dt;
        if (step % output_stride == 0 || step == total_steps) capture(t);
    }
    return res;
}

Field newton_steady(const Field& seed, const Forcing& forcing, const Epsilon& eps, double tol,
                    int max_iter) {
    Field u = seed;
    int n = u.size();
    for (int it = 0; it < max_iter; ++it) {
        Field r = semidiscretize(u, forcing, eps);
        double rn = 0.0;
        for (double v : r.values) rn = std::max(rn, std::abs(v));
        if (rn < tol) return u;

        TridiagOperator op = assemble_linearization(u, forcing, eps.eps);
        TriLu lu;
        lu.dl = op.lower;
        lu.d = op.diag;
        lu.du = op.upper;
        lu.factor();
        std::vector<double> step(n);
        for (int i = 0; i < n; ++i) step[i] = -r[i];
        lu.solve(step);

        double lambda = 1.0;
        bool accepted = false;
        for (int half = 0; half < 12 && !accepted; ++half) {
            Field trial = u;
            for (int i = 0; i < n; ++i) trial[i] += lambda * step[i];
            Field rt = semidiscretize(trial, forcing, eps);
            double rtn = 0.0;
            for (double v : rt.values) rtn = std::max(rtn, std::abs(v));
            if (rtn < rn) {
                u = trial;
                accepted = true;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            // Stalled at the roundoff floor of the residual.
            if (rn < 1e-9) return u;
            throw NewtonDiverged("newton_steady: line search failed at residual " +
                                 std::to_string(rn));
        }
    }
    throw NewtonDiverged("newton_steady: no convergence");
}

std::vector<std::complex<double>> discrete_spectrum(const Field& steady, const Forcing& forcing,
                                                    const Epsilon& eps, int count, double shift,
                                                    bool force_dense) {
    int n = steady.size();
    {
        Field r = semidiscretize(steady, forcing, eps);
        double rn = 0.0;
        for (double v : r.values) rn = std::max(rn, std::abs(v));
        if (rn > 1e-8)
            throw BadInput("discrete_spectrum: field is not a converged steady state");
    }
    TridiagOperator op = assemble_linearization(steady, forcing, eps.eps);

    if (force_dense || n <= 600) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            a(i, i) = op.diag[i];
            if (i + 1 < n) {
                a(i, i + 1) = op.upper[i];
                a(i + 1, i) = op.lower[i];
            }
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(a);
        std::vector<std::complex<double>> all(n);
        for (int i = 0; i < n; ++i) all[i] = es.eigenvalues()[i];
        std::sort(all.begin(), all.end(), [&](const auto& x, const auto& y) {
            return std::abs(x - shift) < std::abs(y - shift);
        });
        all.resize(std::min<std::size_t>(all.size(), count));
        return all;
    }

    // Shift-inverted Arnoldi; each application is one tridiagonal solve.
    TriLu lu;
    lu.dl = op.lower;
    lu.d = op.diag;
    lu.du = op.upper;
    for (int i = 0; i < n; ++i) lu.d[i] -= shift;
    lu.factor();

    int m = std::min(n, std::max(40, 3 * count + 25));
    std::vector<std::vector<double>> v;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m);

    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> w(n);
    for (double& x : w) x = unif(rng);
    double nrm = 0.0;
    for (double x : w) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : w) x /= nrm;
    v.push_back(w);

    int built = m;
    for (int j = 0; j < m; ++j) {
        std::vector<double> z = v[j];
        lu.solve(z);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                double dot = 0.0;
                for (int q = 0; q < n; ++q) dot += z[q] * v[i][q];
                if (pass == 0) h(i, j) = dot;
                else h(i, j) += dot;
                for (int q = 0; q < n; ++q) z[q] -= dot * v[i][q];
            }
        }
        double zn = 0.0;
        for (double x : z) zn += x * x;
        zn = std::sqrt(zn);
        h(j + 1, j) = zn;
        if (zn < 1e-13) {
            built = j + 1;
            break;
        }
        for (double& x : z) x /= zn;
        v.push_back(std::move(z));
    }

    Eigen::MatrixXd hm = h.topLeftCorner(built, built);
    Eigen::EigenSolver<Eigen::MatrixXd> es(hm);
    double resid_scale = built < m ? 0.0 : h(built, built - 1);

    struct Ritz {
        std::complex<double> lambda;
        double resid;
    };
    std::vector<Ritz> ritz;
    for (int i = 0; i < built; ++i) {
        std::complex<double> thv = es.eigenvalues()[i];
        if (std::abs(thv) < 1e-14) continue;
        std::complex<double> lam = shift + 1.0 / thv;
        double tail = std::abs(es.eigenvectors().col(i)(built - 1));
        ritz.push_back({lam, resid_scale * tail / std::abs(thv)});
    }
    std::sort(ritz.begin(), ritz.end(), [&](const Ritz& x, const Ritz& y) {
        return std::abs(x.lambda - shift) < std::abs(y.lambda - shift);
    });

    std::vector<std::complex<double>> out;
    for (const auto& r : ritz) {
        if (static_cast<int>(out.size()) == count) break;
        if (r.resid > 1e-6 * (1.0 + std::abs(r.lambda)))
            throw NotConverged("discrete_spectrum: Arnoldi residual too large; raise m");
        // Skip the conjugate duplicate only if it is numerically identical.
        out.push_back(r.lambda);
    }
    if (static_cast<int>(out.size()) < count)
        throw NotConverged("discrete_spectrum: fewer converged eigenvalues than requested");
    return out;
}

EvansValues evans_homogeneous(std::complex<double> lambda) {
    if (lambda.imag() == 0.0 && lambda.real() <= -2.0)
        throw OnBranchCut("evans_homogeneous: lambda on the branch cut (-inf, -2]");
    std::complex<double> gamma = std::sqrt(2.0 + lambda);
    std::complex<double> beta = std::sqrt(1.0 + 0.5 * lambda);

    EvansValues ev;
    ev.closed_form = 4.0 / 9.0 * lambda * (3.0 + 2.0 * lambda) * gamma;

    // Wronskian of the explicit solution basis, evaluated away from 0 (it is
    // x-independent for this potential).
    double x = 0.7;
    double tt = std::tanh(0.5 * kSqrt2 * x);
    double tp = 0.5 * kSqrt2 * (1.0 - tt * tt);
    std::complex<double> g = 1.0 + 2.0 / 3.0 * lambda + tt * tt;
    std::complex<double> gp = 2.0 * tt * tp;

    std::complex<double> ep = std::exp(-gamma * x);
    std::complex<double> em = std::exp(gamma * x);
    std::complex<double> up = ep * (g + 2.0 * beta * tt);
    std::complex<double> dup = ep * (-gamma * (g + 2.0 * beta * tt) + gp + 2.0 * beta * tp);
    std::complex<double> um = em * (g - 2.0 * beta * tt);
    std::complex<double> dum = em * (gamma * (g - 2.0 * beta * tt) + gp - 2.0 * beta * tp);
    ev.wronskian = up * dum - dup * um;
    return ev;
}

}  // namespace acfront
