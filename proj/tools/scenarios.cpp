#include "scenarios.hpp"

#include <cmath>
#include <sstream>

namespace acfront::cli {

namespace {

std::vector<double> split_doubles(const std::string& s, char sep = ',') {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<Scenario> build_catalog() {
    std::vector<Scenario> cat;
    auto add = [&](Scenario sc) { cat.push_back(std::move(sc)); };

    // Two- and three-front comparisons across heterogeneity types.
    add({"fig1a", "two fronts, flat ground: attraction and annihilation", -10, 10, 0.05,
         "zero", 0.1, {-4, 4}, Orientation::Up, 1.0, -1.0, 3000, 0.1, 5.0});
    add({"fig1b", "two fronts repelled by a steep localized hill", -10, 10, 0.05, "exp:1.0",
         0.1, {-4, 4}, Orientation::Up, 1.0, -1.0, 400, 0.1, 1.0});
    add({"fig1c", "two fronts pinned by a periodic topography", -10, 10, 0.05, "sin:1,2", 0.1,
         {-4, 4}, Orientation::Up, 1.0, -1.0, 400, 0.1, 1.0});
    add({"fig1d", "three fronts, flat ground: coarsening to one front", -25, 25, 0.05, "zero",
         0.1, {-7, 1, 9.1}, Orientation::Up, 1.0, 0.0, 3000, 0.1, 5.0});
    add({"fig1e", "three fronts over an algebraic hill", -25, 25, 0.05, "alg:2", 0.1,
         {-7, 1, 9.1}, Orientation::Up, 1.0, 0.0, 400, 0.1, 1.0});
    add({"fig1f", "three fronts pinned by a periodic topography", -25, 25, 0.05, "sin:1,2",
         0.1, {-7, 1, 9.1}, Orientation::Up, 1.0, 0.0, 400, 0.1, 1.0});

    add({"fig2-pinned-multifront", "six fronts pinned on a long periodic landscape", -60, 60,
         0.05, "triple:1,0,0," + std::to_string(4.0 * M_PI / 15.0), 0.1,
         {-18.75, -11.25, -3.75, 3.75, 11.25, 18.75}, Orientation::Up, 1.0, -1.0, 500, 0.1,
         2.0});

    // Five-front trains.
    add({"fig3-5fronts-per", "five fronts over a slow periodic forcing", -100, 300, 0.1,
         "canon:sinf1:0.2", 0.1, {1, 15, 25, 37, 48}, Orientation::Up, 1.0, 0.0, 500, 0.1,
         2.0});
    add({"fig3-5fronts-alg025", "five fronts over an algebraic valley, p = 0.25", -100, 300,
         0.1, "alg:0.25:-1", 0.1, {1, 15, 25, 37, 48}, Orientation::Up, 1.0, 0.0, 500, 0.1,
         2.0});
    add({"fig3-5fronts-algm050", "five fronts over a growing-slope valley, p = -0.5", -100,
         300, 0.1, "alg:-0.5:-1", 0.1, {1, 15, 25, 37, 48}, Orientation::Up, 1.0, 0.0, 500,
         0.1, 2.0});

    // Four-front sensitivity to the initial condition.
    add({"fig11-4front-a", "four fronts over a shallow valley: outer pair escapes", -20, 20,
         0.05, "alg:0.5:-1", 0.02, {-10, -2.5, 2.5, 10}, Orientation::Up, 5.0, -1.0, 2000,
         0.1, 2.0});
    add({"fig11-4front-c", "four fronts, shifted start: pairwise annihilation", -20, 20, 0.05,
         "alg:0.5:-1", 0.02, {-7.5, -2.5, 2.5, 10}, Orientation::Up, 5.0, -1.0, 800, 0.1,
         2.0});

    // Five-front runs over an algebraic hill.
    add({"fig12-5front-a", "five fronts over an algebraic hill: lone survivor", -50, 50, 0.05,
         "alg:1.25", 0.2, {-6, -0.5, 6, 11.5, 17.5}, Orientation::Up, 1.0, 0.0, 2000, 0.1,
         2.0});
    add({"fig12-5front-c", "five fronts, shifted start: middle front pinned", -50, 50, 0.05,
         "alg:1.25", 0.2, {-7, -0.5, 6, 11.5, 17.5}, Orientation::Up, 1.0, 0.0, 2000, 0.1,
         2.0});

    // Two-front pinning against the forcing amplitude.
    for (auto [tag, eps] : std::vector<std::pair<const char*, double>>{
             {"eps0", -1.0}, {"eps0.01", 0.01}, {"eps0.1", 0.1}, {"eps0.4", 0.4}}) {
        Scenario sc{std::string("fig13-2front-periodic-") + tag,
                    "two fronts vs. periodic pinning strength",
                    -40,
                    40,
                    0.05,
                    eps < 0 ? "zero" : "sin:1,0.8977",
                    eps < 0 ? 0.5 : eps,
                    {-3.5, 6},
                    Orientation::Up,
                    1.0,
                    -1.0,
                    1500,
                    0.1,
                    2.0};
        add(sc);
    }

    add({"fig18-3front-periodic", "three fronts under f1 = cos x forcing", -15, 15, 0.05,
         "triple:1,0,0,1", 0.1, {-8.5, -1, 8}, Orientation::Up, 1.0, 0.0, 1000, 0.1, 2.0});

    // Coarsening with and without a localized bump.
    add({"fig19-coarsen-flat", "six fronts, flat ground", -30, 30, 0.05, "zero", 0.1,
         {-13.0, -1.1, 5.0, 7.5, 10.0, 15.9}, Orientation::Up, 1.0, -1.0, 1500, 0.1, 2.0});
    add({"fig19-coarsen-valley", "six fronts over a weak valley: faster coarsening", -30, 30,
         0.05, "alg:2:-1", 0.1, {-13.0, -1.1, 5.0, 7.5, 10.0, 15.9}, Orientation::Up, 1.0,
         -1.0, 1500, 0.1, 2.0});
    add({"fig19-coarsen-hill", "six fronts over a weak hill: outward spreading", -30, 30,
         0.05, "alg:2", 0.1, {-13.0, -1.1, 5.0, 7.5, 10.0, 15.9}, Orientation::Up, 1.0, -1.0,
         1500, 0.1, 2.0});

    // Mixed localized + periodic topography.
    for (double delta : {0.0, 0.025, 0.04, 0.06}) {
        std::ostringstream id, spec;
        id << "fig20-mixed-delta" << delta;
        spec << "mix:alg:0.5:-1|sin:1,3|" << delta;
        add({id.str(), "three fronts over a valley with periodic ripples", -200, 200, 0.1,
             spec.str(), 0.1, {1, 19, 30}, Orientation::Up, 1.0, 0.0, 2000, 0.1, 2.0});
    }

    // Tail exponent sweep for dispersing trains.
    for (double pv : {0.4, 0.0, -0.4}) {
        std::ostringstream id, spec;
        id << "fig21-5front-p" << pv;
        spec << "alg:" << pv << ":-1";
        add({id.str(), "five fronts over valleys with slower tails", -150, 150, 0.1,
             spec.str(), 0.1, {-6, -0.5, 6, 11.5, 17.5}, Orientation::Up, 1.0, 0.0, 1000, 0.1,
             2.0});
    }

    // Beyond bounded forcing: H'' unbounded, front speeds keep growing.
    {
        Scenario a{"fig22-beyond-p-1.5", "single front, p = -1.5: runaway acceleration",
                   -100,  300,
                   0.05,  "alg:-1.5:-1",
                   0.1,   {10},
                   Orientation::Up,
                   1.0,   0.0,
                   1.0,   0.002,
                   0.02};
        a.exploratory = true;
        add(a);
        Scenario b{"fig22-beyond-p-1.2", "five fronts, p = -1.2: accelerating trains",
                   -100,  300,
                   0.05,  "alg:-1.2:-1",
                   0.1,   {1, 15, 25, 37, 50},
                   Orientation::Up,
                   1.0,   0.0,
                   2.0,   0.002,
                   0.04};
        b.exploratory = true;
        add(b);
    }
    return cat;
}

}  // namespace

const std::vector<Scenario>& scenario_catalog() {
    static const std::vector<Scenario> cat = build_catalog();
    return cat;
}

const Scenario& find_scenario(const std::string& id) {
    for (const auto& sc : scenario_catalog())
        if (sc.id == id) return sc;
    throw UnknownScenario("unknown scenario id: " + id);
}

Forcing parse_forcing(const std::string& spec) {
    if (spec == "zero") return make_zero_forcing();

    auto topo_of = [](const std::string& body) -> Topography {
        // exp:MU[:SIGN] | alg:P[:SIGN] | sin:AMP,K | tab:PATH
        auto colon = body.find(':');
        if (colon == std::string::npos) throw BadInput("bad topography spec: " + body);
        std::string kind = body.substr(0, colon);
        std::string rest = body.substr(colon + 1);
        if (kind == "tab") return load_tabulated_csv(rest);
        if (kind == "sin") {
            auto v = split_doubles(rest);
            if (v.size() != 2) throw BadInput("sin topography needs AMP,K");
            return make_sinusoid(v[0], v[1]);
        }
        auto v = split_doubles(rest, ':');
        double sign = v.size() > 1 ? v[1] : 1.0;
        if (v.empty()) throw BadInput("bad topography spec: " + body);
        if (kind == "exp") return make_exp_hill(v[0], sign);
        if (kind == "alg") return make_alg_hill(v[0], sign);
        throw BadInput("unknown topography kind: " + kind);
    };

    if (spec.rfind("triple:", 0) == 0) {
        auto v = split_doubles(spec.substr(7));
        if (v.size() != 4) throw BadInput("triple forcing needs A1,A2,A3,K");
        return make_cos_sin_triple(v[0], v[1], v[2], v[3]);
    }
    if (spec.rfind("canon:sinf1:", 0) == 0) {
        double k = std::stod(spec.substr(12));
        ScalarFn f1{[k](double x) { return std::sin(k * x); },
                    [k](double x) { return k * std::cos(k * x); }};
        ScalarFn zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
        return make_canonical(f1, zero, zero);
    }
    if (spec.rfind("mix:", 0) == 0) {
        // mix:LOC|PER|DELTA
        std::string body = spec.substr(4);
        auto bar1 = body.find('|');
        auto bar2 = body.rfind('|');
        if (bar1 == std::string::npos || bar2 == bar1)
            throw BadInput("mixed topography needs LOC|PER|DELTA");
        Topography loc = topo_of(body.substr(0, bar1));
        Topography per = topo_of(body.substr(bar1 + 1, bar2 - bar1 - 1));
        double delta = std::stod(body.substr(bar2 + 1));
        return make_topographic(make_mixed(std::move(loc), std::move(per), delta));
    }
    return make_topographic(topo_of(spec));
}

PdeRunConfig build_config(const Scenario& sc, const std::map<std::string, std::string>& set) {
    auto get = [&](const char* key, double fallback) {
        auto it = set.find(key);
        return it == set.end() ? fallback : std::stod(it->second);
    };
    double dx = get("dx", sc.dx);
    double eps = get("eps", sc.eps);
    double t_end = get("t_end", sc.t_end);
    double dt = get("dt", sc.dt);
    double out_every = get("output_every", sc.output_every);
    double steep = get("steepness", sc.steepness);

    for (const auto& [key, value] : set) {
        static const char* known[] = {"dx",           "eps",       "t_end", "dt",
                                      "output_every", "steepness", "scheme"};
        bool ok = false;
        for (const char* k : known) ok |= key == k;
        if (!ok) throw BadInput("unknown --set key: " + key + "=" + value);
    }

    int n = static_cast<int>(std::round((sc.x_max - sc.x_min) / dx)) + 1;
    Grid1D grid(sc.x_min, sc.x_max, n);
    Field ic = multifront_profile(grid, sc.positions, sc.first, steep, sc.offset);

    TimeScheme scheme = ImexTheta{0.5};
    auto it = set.find("scheme");
    if (it != set.end()) {
        if (it->second == "rk4") scheme = ExplicitRk4{};
        else if (it->second == "imex") scheme = ImexTheta{0.5};
        else throw BadInput("scheme must be rk4 or imex");
    }

    std::optional<double> dt_opt = dt;
    if (std::holds_alternative<ExplicitRk4>(scheme)) dt_opt = std::nullopt;
    PdeRunConfig cfg{grid,   parse_forcing(sc.forcing_spec),
                     Epsilon(eps),  t_end,
                     dt_opt, scheme,
                     out_every,     std::move(ic)};
    return cfg;
}

}  // namespace acfront::cli
