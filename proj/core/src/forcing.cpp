#include "acfront/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "acfront/quadrature.hpp"

namespace acfront {

namespace {

// Natural cubic spline through (x_i, y_i): returns second derivatives m_i.
std::vector<double> spline_coeffs(const std::vector<double>& x, const std::vector<double>& y) {
    int n = static_cast<int>(x.size());
    std::vector<double> m(n, 0.0);
    if (n < 3) return m;
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    b[0] = b[n - 1] = 1.0;
    for (int i = 1; i + 1 < n; ++i) {
        double hl = x[i] - x[i - 1];
        double hr = x[i + 1] - x[i];
        a[i] = hl / 6.0;
        b[i] = (hl + hr) / 3.0;
        c[i] = hr / 6.0;
        r[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
    }
    // Thomas sweep.
    for (int i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m[n - 1] = r[n - 1] / b[n - 1];
    for (int i = n - 2; i >= 0; --i) m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
    return m;
}

double spline_eval(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& m, double xq) {
    int n = static_cast<int>(x.size());
    int lo = static_cast<int>(std::upper_bound(x.begin(), x.end(), xq) - x.begin()) - 1;
    lo = std::clamp(lo, 0, n - 2);
    double h = x[lo + 1] - x[lo];
    double t = (xq - x[lo]) / h;
    double s = 1.0 - t;
    return s * y[lo] + t * y[lo + 1] +
           h * h / 6.0 * ((s * s * s - s) * m[lo] + (t * t * t - t) * m[lo + 1]);
}

double spline_eval_deriv(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<double>& m, double xq) {
    int n = static_cast<int>(x.size());
    int lo = static_cast<int>(std::upper_bound(x.begin(), x.end(), xq) - x.begin()) - 1;
    lo = std::clamp(lo, 0, n - 2);
    double h = x[lo + 1] - x[lo];
    double t = (xq - x[lo]) / h;
    double s = 1.0 - t;
    return (y[lo + 1] - y[lo]) / h +
           h / 6.0 * ((3.0 * t * t - 1.0) * m[lo + 1] - (3.0 * s * s - 1.0) * m[lo]);
}

// Integral of one spline segment from its left node to local coordinate t.
double spline_segment_integral(double y0, double y1, double m0, double m1, double h, double t) {
    double s = 1.0 - t;
    double is = t - 0.5 * t * t;              // int_0^t (1-q) dq
    double it = 0.5 * t * t;                  // int_0^t q dq
    double is3 = -0.25 + 0.5 - (0.25 * s * s * s * s - 0.5 * s * s);  // int (s^3 - s)
    double it3 = 0.25 * t * t * t * t - 0.5 * t * t;                  // int (t^3 - t)
    return h * (is * y0 + it * y1 + h * h / 6.0 * (is3 * m0 + it3 * m1));
}

}  // namespace

Tabulated::Tabulated(std::vector<double> x, std::vector<double> h1,
                     std::optional<std::vector<double>> h2)
    : x_(std::move(x)), h1_(std::move(h1)) {
    if (x_.size() != h1_.size() || x_.size() < 4)
        throw BadInput("Tabulated: need >= 4 matching (x, H') samples");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i - 1] < x_[i])) throw BadInput("Tabulated: x must be strictly increasing");

    int n = static_cast<int>(x_.size());
    std::vector<double> fd(n);
    for (int i = 1; i + 1 < n; ++i) fd[i] = (h1_[i + 1] - h1_[i - 1]) / (x_[i + 1] - x_[i - 1]);
    fd[0] = (h1_[1] - h1_[0]) / (x_[1] - x_[0]);
    fd[n - 1] = (h1_[n - 1] - h1_[n - 2]) / (x_[n - 1] - x_[n - 2]);

    if (h2) {
        h2_ = std::move(*h2);
        if (h2_.size() != x_.size()) throw BadInput("Tabulated: H'' sample count mismatch");
        double scale = 0.0;
        for (double v : h2_) scale = std::max(scale, std::abs(v));
        for (int i = 1; i + 1 < n; ++i)
            if (std::abs(h2_[i] - fd[i]) > 1e-4 * std::max(1.0, scale))
                throw BadInput("Tabulated: supplied H'' inconsistent with dH'/dx");
    } else {
        h2_ = fd;
    }
    c1_ = spline_coeffs(x_, h1_);
    c2_ = spline_coeffs(x_, h2_);

    cum_.assign(n, 0.0);
    for (int i = 1; i < n; ++i)
        cum_[i] = cum_[i - 1] + spline_segment_integral(h1_[i - 1], h1_[i], c1_[i - 1], c1_[i],
                                                        x_[i] - x_[i - 1], 1.0);
}

double Tabulated::value(double x) const {
    if (x <= x_.front()) { edge_hit_ = true; return h1_.front() * (x - x_.front()); }
    if (x >= x_.back()) {
        edge_hit_ = true;
        return cum_.back() + h1_.back() * (x - x_.back());
    }
    int n = static_cast<int>(x_.size());
    int lo = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    lo = std::clamp(lo, 0, n - 2);
    double h = x_[lo + 1] - x_[lo];
    return cum_[lo] +
           spline_segment_integral(h1_[lo], h1_[lo + 1], c1_[lo], c1_[lo + 1], h,
                                   (x - x_[lo]) / h);
}

double Tabulated::deriv1(double x) const {
    if (x < x_.front()) { edge_hit_ = true; return h1_.front(); }
    if (x > x_.back()) { edge_hit_ = true; return h1_.back(); }
    return spline_eval(x_, h1_, c1_, x);
}

double Tabulated::deriv2(double x) const {
    if (x < x_.front() || x > x_.back()) { edge_hit_ = true; return 0.0; }
    return spline_eval(x_, h2_, c2_, x);
}

double Tabulated::deriv3(double x) const {
    if (x < x_.front() || x > x_.back()) { edge_hit_ = true; return 0.0; }
    return spline_eval_deriv(x_, h2_, c2_, x);
}

double Topography::value(double x) const {
    return std::visit(
        [x](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ExpHill>) {
                double q = std::exp(-kSqrt2 * t.mu * std::abs(x));
                double d = 1.0 + q;
                return t.sign * 4.0 * q / (d * d);
            } else if constexpr (std::is_same_v<T, AlgHill>) {
                return t.sign * std::pow(1.0 + x * x, 0.5 * (1.0 - t.p));
            } else if constexpr (std::is_same_v<T, Sinusoid>) {
                return t.amplitude * std::sin(t.k * x);
            } else if constexpr (std::is_same_v<T, Mixed>) {
                return t.loc->value(x) + t.delta * t.per->value(x);
            } else {
                return t.value(x);
            }
        },
        shape);
}

double Topography::deriv1(double x) const {
    return std::visit(
        [x](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ExpHill>) {
                double u = 0.5 * kSqrt2 * t.mu * x;
                double s = 1.0 / std::cosh(u);
                return -t.sign * kSqrt2 * t.mu * s * s * std::tanh(u);
            } else if constexpr (std::is_same_v<T, AlgHill>) {
                double q = 0.5 * (1.0 - t.p);
                return t.sign * 2.0 * q * x * std::pow(1.0 + x * x, q - 1.0);
            } else if constexpr (std::is_same_v<T, Sinusoid>) {
                return t.amplitude * t.k * std::cos(t.k * x);
            } else if constexpr (std::is_same_v<T, Mixed>) {
                return t.loc->deriv1(x) + t.delta * t.per->deriv1(x);
            } else {
                return t.deriv1(x);
            }
        },
        shape);
}

double Topography::deriv2(double x) const {
    return std::visit(
        [x](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ExpHill>) {
                double u = 0.5 * kSqrt2 * t.mu * x;
                double s2 = 1.0 / (std::cosh(u) * std::cosh(u));
                return t.sign * t.mu * t.mu * s2 * (2.0 - 3.0 * s2);
            } else if constexpr (std::is_same_v<T, AlgHill>) {
                double q = 0.5 * (1.0 - t.p);
                double x2 = x * x;
                return t.sign * 2.0 * q * std::pow(1.0 + x2, q - 2.0) *
                       (1.0 + (2.0 * q - 1.0) * x2);
            } else if constexpr (std::is_same_v<T, Sinusoid>) {
                return -t.amplitude * t.k * t.k * std::sin(t.k * x);
            } else if constexpr (std::is_same_v<T, Mixed>) {
                return t.loc->deriv2(x) + t.delta * t.per->deriv2(x);
            } else {
                return t.deriv2(x);
            }
        },
        shape);
}

double Topography::deriv3(double x) const {
    return std::visit(
        [x](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ExpHill>) {
                double u = 0.5 * kSqrt2 * t.mu * x;
                double s2 = 1.0 / (std::cosh(u) * std::cosh(u));
                double mu3 = t.mu * t.mu * t.mu;
                return t.sign * 2.0 * kSqrt2 * mu3 * s2 * std::tanh(u) * (3.0 * s2 - 1.0);
            } else if constexpr (std::is_same_v<T, AlgHill>) {
                double q = 0.5 * (1.0 - t.p);
                double x2 = x * x;
                return t.sign * 4.0 * q * x * std::pow(1.0 + x2, q - 3.0) *
                       ((3.0 * q - 3.0) + (2.0 * q - 1.0) * (q - 1.0) * x2);
            } else if constexpr (std::is_same_v<T, Sinusoid>) {
                return -t.amplitude * t.k * t.k * t.k * std::cos(t.k * x);
            } else if constexpr (std::is_same_v<T, Mixed>) {
                return t.loc->deriv3(x) + t.delta * t.per->deriv3(x);
            } else {
                return t.deriv3(x);
            }
        },
        shape);
}

std::optional<double> Topography::period() const {
    if (const auto* s = std::get_if<Sinusoid>(&shape))
        return 2.0 * M_PI / std::abs(s->k);
    return std::nullopt;
}

Topography make_exp_hill(double mu, double sign) {
    if (!(mu > 0.0)) throw BadInput("ExpHill: mu must be > 0");
    return Topography{ExpHill{mu, sign}};
}
Topography make_alg_hill(double p, double sign) { return Topography{AlgHill{p, sign}}; }
Topography make_sinusoid(double amplitude, double k) {
    if (k == 0.0) throw BadInput("Sinusoid: k must be nonzero");
    return Topography{Sinusoid{amplitude, k}};
}
Topography make_mixed(Topography loc, Topography per, double delta) {
    Mixed m{std::make_shared<Topography>(std::move(loc)),
            std::make_shared<Topography>(std::move(per)), delta};
    return Topography{std::move(m)};
}

Topography load_tabulated_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open tabulated topography file: " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> xs, h1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, v;
        if (!(ss >> x >> v)) throw BadInput("bad row in tabulated topography file: " + line);
        xs.push_back(x);
        h1.push_back(v);
    }
    return Topography{Tabulated(std::move(xs), std::move(h1))};
}

Forcing make_zero_forcing() { return Forcing{ZeroForcing{}}; }
Forcing make_cos_sin_triple(double a1, double a2, double a3, double k) {
    if (k == 0.0) throw BadInput("CosSinTriple: k must be nonzero");
    return Forcing{CosSinTriple{a1, a2, a3, k}};
}
Forcing make_topographic(Topography topo) { return Forcing{TopographyDriven{std::move(topo)}}; }
Forcing make_canonical(ScalarFn f1, ScalarFn f2, ScalarFn f3) {
    return Forcing{Canonical{std::move(f1), std::move(f2), std::move(f3)}};
}

std::optional<double> Forcing::period() const {
    if (const auto* t = std::get_if<CosSinTriple>(&kind)) return 2.0 * M_PI / std::abs(t->k);
    if (const auto* t = std::get_if<TopographyDriven>(&kind)) return t->topo.period();
    return std::nullopt;
}

double eval_forcing(const Forcing& f, double u, double v, double x) {
    return std::visit(
        [&](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, ZeroForcing>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, Canonical>) {
                return g.f1.f(x) * u + g.f2.f(x) * v + g.f3.f(x);
            } else if constexpr (std::is_same_v<T, CosSinTriple>) {
                return g.alpha1 * std::cos(g.k * x) * u + g.alpha2 * std::sin(g.k * x) * v +
                       g.alpha3 * std::sin(g.k * x);
            } else {
                return g.topo.deriv1(x) * v + g.topo.deriv2(x) * u;
            }
        },
        f.kind);
}

ForcingPartials forcing_partials(const Forcing& f, double u, double v, double x) {
    return std::visit(
        [&](const auto& g) -> ForcingPartials {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, ZeroForcing>) {
                return {0.0, 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, Canonical>) {
                return {g.f1.f(x), g.f2.f(x),
                        g.f1.df(x) * u + g.f2.df(x) * v + g.f3.df(x)};
            } else if constexpr (std::is_same_v<T, CosSinTriple>) {
                double c = std::cos(g.k * x), s = std::sin(g.k * x);
                return {g.alpha1 * c, g.alpha2 * s,
                        g.k * (-g.alpha1 * s * u + g.alpha2 * c * v + g.alpha3 * c)};
            } else {
                return {g.topo.deriv2(x), g.topo.deriv1(x),
                        g.topo.deriv2(x) * v + g.topo.deriv3(x) * u};
            }
        },
        f.kind);
}

Field background_state(int sign, const Forcing& f, const Epsilon& eps, const Grid1D& grid,
                       const BackgroundOptions& opts) {
    if (sign != 1 && sign != -1) throw BadInput("background_state: sign must be +-1");
    const double s = static_cast<double>(sign);
    const double window = 23.0;  // exp(-sqrt2 * 23) < 1e-14

    if (opts.warnings && f.is_topographic()) {
        if (const auto* alg = std::get_if<AlgHill>(&f.topography()->shape)) {
            if (alg->p < -1.0)
                opts.warnings->push_back(
                    "background_state: AlgHill p < -1 has unbounded H'', result is formal");
        }
    }

    auto forcing_at = [&](double z) { return eval_forcing(f, s, 0.0, z); };
    const double probe_step = 0.1;
    for (double z = grid.x_min - window; z <= grid.x_max + window; z += probe_step) {
        if (std::abs(forcing_at(z)) > opts.forcing_bound)
            throw UnboundedForcing("background_state: |F(+-1,0,x)| exceeds bound at x=" +
                                   std::to_string(z));
    }

    Field out(grid);
    for (int i = 0; i < grid.n; ++i) {
        double x = grid.x(i);
        double right = integral(
            [&](double z) { return forcing_at(z) * std::exp(kSqrt2 * (x - z)); }, x, x + window,
            1e-10, 1e-13);
        double left = integral(
            [&](double z) { return forcing_at(z) * std::exp(-kSqrt2 * (x - z)); }, x - window, x,
            1e-10, 1e-13);
        out[i] = s + eps.eps / (2.0 * kSqrt2) * (right + left);
    }
    return out;
}

}  // namespace acfront
