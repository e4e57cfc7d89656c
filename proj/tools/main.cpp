// Scenario runner and data-product emitter for the heterogeneous Allen-Cahn
// front machinery. Exit codes: 0 success, 2 numeric failure, 3 bad input.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "acfront/geometry.hpp"
#include "acfront/io.hpp"
#include "acfront/stationary.hpp"
#include "scenarios.hpp"

namespace fs = std::filesystem;
using namespace acfront;
using cli::parse_forcing;

namespace {

MelnikovFn melnikov_for(const Forcing& f, Orientation o, bool closed_form) {
    if (closed_form) {
        if (const auto* t = std::get_if<CosSinTriple>(&f.kind))
            return make_melnikov_periodic_closed(t->alpha1, t->alpha2, t->alpha3, t->k, o);
        throw BadInput("--closed-form needs a triple forcing");
    }
    return make_melnikov_quadrature(f, o);
}

struct RangeSpec {
    double lo = -6.0, hi = 6.0, step = 0.01;
};

RangeSpec parse_range(const std::string& s) {
    RangeSpec r;
    if (s.empty()) return r;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &r.lo, &r.hi, &r.step) != 3)
        throw BadInput("range must be LO:HI:STEP");
    if (!(r.hi > r.lo) || !(r.step > 0)) throw BadInput("bad range " + s);
    return r;
}

std::vector<double> parse_positions(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw BadInput("no positions given");
    return out;
}

nlohmann::json scenario_meta(const cli::Scenario& sc,
                             const std::map<std::string, std::string>& overrides,
                             const PdeRunConfig& cfg) {
    nlohmann::json j;
    j["scenario"] = sc.id;
    j["description"] = sc.description;
    j["exploratory"] = sc.exploratory;
    j["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max}, {"n", cfg.grid.n}};
    j["forcing"] = sc.forcing_spec;
    j["eps"] = cfg.eps.eps;
    j["t_end"] = cfg.t_end;
    j["dt"] = cfg.dt ? nlohmann::json(*cfg.dt) : nlohmann::json("auto");
    j["scheme"] = std::holds_alternative<ImexTheta>(cfg.scheme) ? "imex" : "rk4";
    j["output_every"] = cfg.output_every;
    j["initial_positions"] = sc.positions;
    j["overrides"] = overrides;
    return j;
}

std::string timestamp_name() {
    auto now = std::chrono::system_clock::now();
    auto t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%S", std::gmtime(&t));
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  now.time_since_epoch()).count() % 1000;
    return std::string(buf) + "." + std::to_string(ms);
}

int run_one_scenario(const std::string& id, const std::string& outdir,
                     const std::map<std::string, std::string>& overrides,
                     const std::string& stamp) {
    const cli::Scenario& sc = cli::find_scenario(id);
    if (sc.exploratory)
        std::cout << "[" << id << "] exploratory regime: the front-interaction reduction is "
                  << "formal here (unbounded forcing)\n";
    PdeRunConfig cfg = cli::build_config(sc, overrides);

    fs::path dir = fs::path(outdir) / id / (stamp.empty() ? timestamp_name() : stamp);
    fs::create_directories(dir / "snapshots");

    {
        std::ofstream meta(dir / "meta.json");
        meta << scenario_meta(sc, overrides, cfg).dump(2) << "\n";
    }
    PdeRunResult res = run(cfg);
    write_front_tracks_csv((dir / "tracks.csv").string(), res);
    write_pde_events_csv((dir / "events.csv").string(), res);
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu.csv", i);
        write_snapshot_csv((dir / "snapshots" / name).string(), res.snapshots[i]);
    }
    std::cout << "[" << id << "] " << res.track_times.size() << " frames, "
              << res.annihilations.size() << " annihilations, " << res.pinned.size()
              << " pinned fronts -> " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Front machinery of the weakly heterogeneous Allen-Cahn equation"};
    app.require_subcommand(1);

    std::string forcing_spec = "zero";
    bool closed_form = false;
    double eps = 0.1;
    std::string out = "-";

    auto add_forcing_opts = [&](CLI::App* cmd) {
        cmd->add_option("--topo", forcing_spec,
                        "topography spec: exp:MU[:SIGN] | alg:P[:SIGN] | sin:AMP,K | tab:PATH "
                        "| mix:LOC|PER|DELTA");
        cmd->add_flag_callback("--zero", [&] { forcing_spec = "zero"; },
                               "no heterogeneity");
        cmd->add_option_function<std::string>(
            "--triple", [&](const std::string& v) { forcing_spec = "triple:" + v; },
            "cos/sin triple: A1,A2,A3,K");
        cmd->add_flag("--closed-form", closed_form,
                      "use the closed-form backend for triple forcings");
    };

    // melnikov ------------------------------------------------------------
    auto* cmd_mel = app.add_subcommand("melnikov", "tabulate R(phi) and R'(phi) to CSV");
    std::string range_str = "-6:6:0.01";
    add_forcing_opts(cmd_mel);
    cmd_mel->add_option("--range", range_str, "phi range LO:HI:STEP");
    cmd_mel->add_option("--out", out, "output CSV path")->required();

    // one-front -----------------------------------------------------------
    auto* cmd_one = app.add_subcommand("one-front", "stationary one-front phases + stability");
    std::string scan_range = "-6:6:0.02";
    std::string orient = "up";
    add_forcing_opts(cmd_one);
    cmd_one->add_option("--range", scan_range, "scan range LO:HI:STEP");
    cmd_one->add_option("--eps", eps, "forcing amplitude");
    cmd_one->add_option("--orientation", orient, "up|down");
    cmd_one->add_option("--out", out, "output JSON path (default stdout)");

    // two-front -----------------------------------------------------------
    auto* cmd_two = app.add_subcommand("two-front", "refine a stationary two-front pair");
    std::string seed_str;
    add_forcing_opts(cmd_two);
    cmd_two->add_option("--seed", seed_str, "seed pair PHI_UP,PHI_DOWN")->required();
    cmd_two->add_option("--eps", eps, "forcing amplitude");
    cmd_two->add_option("--out", out, "output JSON path (default stdout)");

    // nfront ---------------------------------------------------------------
    auto* cmd_nf = app.add_subcommand("nfront", "integrate the reduced front-interaction ODE");
    std::string init_str;
    std::string first_str = "up";
    double t_end = 100.0;
    bool merge = false;
    std::string events_out;
    add_forcing_opts(cmd_nf);
    cmd_nf->add_option("--init", init_str, "initial positions P1,P2,...")->required();
    cmd_nf->add_option("--first", first_str, "orientation of the first front: up|down");
    cmd_nf->add_option("--eps", eps, "forcing amplitude");
    cmd_nf->add_option("--t-end", t_end, "integration horizon");
    cmd_nf->add_flag("--merge", merge, "delete colliding pairs and continue (approximate)");
    cmd_nf->add_option("--out", out, "trajectory CSV path")->required();
    cmd_nf->add_option("--events-out", events_out, "events CSV path");

    // stationary -------------------------------------------------------------
    auto* cmd_st = app.add_subcommand("stationary", "enumerate stationary multi-front patterns");
    int n_fronts = 2;
    int window = 2;
    bool periodic_mode = false;
    add_forcing_opts(cmd_st);
    cmd_st->add_option("--n", n_fronts, "number of fronts");
    cmd_st->add_option("--eps", eps, "forcing amplitude");
    cmd_st->add_flag("--periodic", periodic_mode, "periodic enumeration on a zero lattice");
    cmd_st->add_option("--window", window, "periods between consecutive fronts (periodic)");
    cmd_st->add_option("--out", out, "output JSON path (default stdout)");

    // pde ----------------------------------------------------------------------
    auto* cmd_pde = app.add_subcommand("pde", "method-of-lines run of the full equation");
    std::string domain_str = "-10:10";
    double dx = 0.05;
    std::string ic_str;
    std::string scheme_str = "imex";
    double dt = 0.1, output_every = 1.0;
    double steepness = 1.0, offset = 0.0;
    std::string pde_out = "pde-run";
    add_forcing_opts(cmd_pde);
    cmd_pde->add_option("--domain", domain_str, "domain LO:HI");
    cmd_pde->add_option("--dx", dx, "grid spacing");
    cmd_pde->add_option("--ic", ic_str, "front positions P1,P2,...")->required();
    cmd_pde->add_option("--steepness", steepness, "profile steepness");
    cmd_pde->add_option("--offset", offset, "profile offset");
    cmd_pde->add_option("--eps", eps, "forcing amplitude");
    cmd_pde->add_option("--t-end", t_end, "integration horizon");
    cmd_pde->add_option("--scheme", scheme_str, "rk4|imex");
    cmd_pde->add_option("--dt", dt, "time step (imex; rk4 picks 0.2 dx^2)");
    cmd_pde->add_option("--output-every", output_every, "output cadence");
    cmd_pde->add_option("--out", pde_out, "output directory");

    // manifold -------------------------------------------------------------------
    auto* cmd_man = app.add_subcommand("manifold",
                                       "stable/unstable manifold sections and intersections");
    double alpha1 = -0.1, alpha3 = 0.0, kwave = M_PI, section_x = 0.0;
    std::string man_out = "manifold-run";
    cmd_man->add_option("--alpha1", alpha1, "U-coefficient amplitude of cos(kx)");
    cmd_man->add_option("--alpha3", alpha3, "constant-term amplitude of sin(kx)");
    cmd_man->add_option("--k", kwave, "wavenumber");
    cmd_man->add_option("--eps", eps, "forcing amplitude");
    cmd_man->add_option("--section-x", section_x, "section plane position");
    cmd_man->add_option("--out", man_out, "output directory");

    // scenario ----------------------------------------------------------------------
    auto* cmd_sc = app.add_subcommand("scenario", "run one or more named scenarios");
    std::vector<std::string> ids;
    std::vector<std::string> set_pairs;
    std::string outdir = "runs";
    std::string stamp;
    int jobs = 1;
    cmd_sc->add_option("ids", ids, "scenario ids")->required();
    cmd_sc->add_option("--set", set_pairs, "override key=value (eps, t_end, dx, dt, ...)");
    cmd_sc->add_option("--outdir", outdir, "output root directory");
    cmd_sc->add_option("--stamp", stamp, "fixed run-directory name instead of a timestamp");
    cmd_sc->add_option("--jobs", jobs, "parallel scenario runs");

    auto* cmd_ls = app.add_subcommand("list-scenarios", "print the scenario catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        Forcing forcing = parse_forcing(forcing_spec);

        if (*cmd_mel) {
            RangeSpec r = parse_range(range_str);
            MelnikovFn fn = melnikov_for(forcing, Orientation::Up, closed_form);
            write_melnikov_csv(out, fn, r.lo, r.hi, r.step);
        } else if (*cmd_one) {
            RangeSpec r = parse_range(scan_range);
            Orientation o = orient == "down" ? Orientation::Down : Orientation::Up;
            MelnikovFn fn = melnikov_for(forcing, o, closed_form);
            int n = static_cast<int>((r.hi - r.lo) / r.step) + 1;
            OneFrontScan scan = one_front_find(fn, r.lo, r.hi, n, eps);
            std::string json = stationary_report_json(scan.fronts);
            if (scan.degenerate)
                json = "{\"degenerate\": true, \"fronts\": " + json + "}";
            if (out == "-") std::cout << json << "\n";
            else std::ofstream(out) << json << "\n";
        } else if (*cmd_two) {
            auto seeds = parse_positions(seed_str);
            if (seeds.size() != 2) throw BadInput("--seed needs PHI_UP,PHI_DOWN");
            MelnikovFn up = melnikov_for(forcing, Orientation::Up, closed_form);
            MelnikovFn down = melnikov_for(forcing, Orientation::Down, closed_form);
            StationaryFront tf = two_front_solve(up, down, eps, {seeds[0], seeds[1]});
            std::string json = stationary_report_json({tf});
            if (out == "-") std::cout << json << "\n";
            else std::ofstream(out) << json << "\n";
        } else if (*cmd_nf) {
            auto pos = parse_positions(init_str);
            Orientation first = first_str == "down" ? Orientation::Down : Orientation::Up;
            NFrontSystem sys{melnikov_for(forcing, Orientation::Up, closed_form),
                             melnikov_for(forcing, Orientation::Down, closed_form), true};
            IntegrateControls ctl;
            ctl.merge_on_collision = merge;
            FrontTrajectory traj =
                integrate(FrontState(pos, first, Epsilon(eps)), sys, t_end, ctl);
            write_trajectory_csv(out, traj);
            if (!events_out.empty()) write_trajectory_events_csv(events_out, traj);
        } else if (*cmd_st) {
            if (periodic_mode) {
                const Topography* topo = forcing.topography();
                if (!topo) throw BadInput("periodic enumeration needs --topo");
                PeriodicEnumeration pe =
                    enumerate_stationary_periodic(*topo, eps, n_fronts, window);
                std::string json = stationary_report_json(pe.fronts);
                if (out == "-") std::cout << json << "\n";
                else std::ofstream(out) << json << "\n";
            } else {
                const Topography* topo = forcing.topography();
                if (!topo) throw BadInput("localized enumeration needs --topo exp:MU or alg:P");
                EnumerationReport rep = enumerate_stationary_localized(*topo, eps, n_fronts);
                std::string json = stationary_report_json(rep.fronts);
                if (out == "-") std::cout << json << "\n";
                else std::ofstream(out) << json << "\n";
            }
        } else if (*cmd_pde) {
            double lo, hi;
            if (std::sscanf(domain_str.c_str(), "%lf:%lf", &lo, &hi) != 2)
                throw BadInput("--domain must be LO:HI");
            int n = static_cast<int>(std::round((hi - lo) / dx)) + 1;
            Grid1D grid(lo, hi, n);
            Field ic = multifront_profile(grid, parse_positions(ic_str), Orientation::Up,
                                          steepness, offset);
            TimeScheme scheme =
                scheme_str == "rk4" ? TimeScheme(ExplicitRk4{}) : TimeScheme(ImexTheta{0.5});
            std::optional<double> dt_opt = dt;
            if (scheme_str == "rk4") dt_opt = std::nullopt;
            PdeRunConfig cfg{grid, forcing,  Epsilon(eps), t_end,
                             dt_opt,   scheme, output_every, std::move(ic)};
            PdeRunResult res = run(cfg);
            fs::create_directories(fs::path(pde_out) / "snapshots");
            write_front_tracks_csv((fs::path(pde_out) / "tracks.csv").string(), res);
            write_pde_events_csv((fs::path(pde_out) / "events.csv").string(), res);
            for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "frame_%06zu.csv", i);
                write_snapshot_csv((fs::path(pde_out) / "snapshots" / name).string(),
                                   res.snapshots[i]);
            }
            std::cout << res.track_times.size() << " frames, " << res.annihilations.size()
                      << " annihilations, " << res.pinned.size() << " pinned fronts\n";
        } else if (*cmd_man) {
            Forcing fam = make_cos_sin_triple(alpha1, 0.0, alpha3, kwave);
            auto [up, down] = two_front_lobe_sections(fam, eps, section_x);
            fs::create_directories(man_out);
            write_section_csv((fs::path(man_out) / "wu_minus.csv").string(), up);
            write_section_csv((fs::path(man_out) / "ws_minus.csv").string(), down);
            auto xs = two_front_lobe_intersections(fam, eps, section_x);
            std::ofstream ix(fs::path(man_out) / "intersections.csv");
            ix << std::setprecision(17) << "phi_a,phi_b,u,p\n";
            for (const auto& li : xs)
                ix << li.phi_a << "," << li.phi_b << "," << li.u << "," << li.p << "\n";
            std::cout << xs.size() << " intersections -> " << man_out << "\n";
        } else if (*cmd_sc) {
            std::map<std::string, std::string> overrides;
            for (const auto& kv : set_pairs) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw BadInput("--set needs key=value");
                overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            if (jobs <= 1 || ids.size() == 1) {
                for (const auto& id : ids) run_one_scenario(id, outdir, overrides, stamp);
            } else {
                std::vector<std::thread> pool;
                std::atomic<std::size_t> next{0};
                std::atomic<bool> failed{false};
                for (int w = 0; w < jobs; ++w)
                    pool.emplace_back([&] {
                        for (std::size_t i = next++; i < ids.size(); i = next++) {
                            try {
                                run_one_scenario(ids[i], outdir, overrides, stamp);
                            } catch (...) {
                                failed = true;
                            }
                        }
                    });
                for (auto& th : pool) th.join();
                if (failed) throw NumericError("a scenario run failed");
            }
        } else if (*cmd_ls) {
            for (const auto& sc : cli::scenario_catalog())
                std::cout << sc.id << (sc.exploratory ? " [exploratory]" : "") << "\n    "
                          << sc.description << "\n";
        }
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
