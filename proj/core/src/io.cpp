#include "acfront/io.hpp"

#include <fstream>
#include <iomanip>

#include <json.hpp>

namespace acfront {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInput("cannot open output file: " + path);
    out << std::setprecision(17);
    return out;
}

const char* orientation_tag(Orientation o) { return o == Orientation::Up ? "up" : "down"; }

}  // namespace

void write_melnikov_csv(const std::string& path, const MelnikovFn& fn, double phi_min,
                        double phi_max, double step) {
    if (!(step > 0.0) || !(phi_max > phi_min)) throw BadInput("write_melnikov_csv: bad range");
    auto out = open_out(path);
    out << "phi,R,Rprime\n";
    for (double phi = phi_min; phi <= phi_max + 0.5 * step; phi += step)
        out << phi << "," << fn.value(phi) << "," << fn.deriv(phi) << "\n";
}

void write_trajectory_csv(const std::string& path, const FrontTrajectory& traj) {
    auto out = open_out(path);
    std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    out << "t";
    for (std::size_t j = 0; j < n; ++j) out << ",phi_" << j + 1;
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << traj.times[i];
        for (double p : traj.states[i]) out << "," << p;
        // pad after merges so every row has the header's column count
        for (std::size_t j = traj.states[i].size(); j < n; ++j) out << ",nan";
        out << "\n";
    }
}

void write_trajectory_events_csv(const std::string& path, const FrontTrajectory& traj) {
    auto out = open_out(path);
    out << "t,kind,i,j\n";
    for (const auto& e : traj.events)
        out << e.time << "," << (e.kind == EventKind::TooClose ? "too_close" : "left_domain")
            << "," << e.i << "," << e.j << "\n";
}

void write_snapshot_csv(const std::string& path, const Field& field) {
    auto out = open_out(path);
    out << "x,u\n";
    for (int i = 0; i < field.size(); ++i) out << field.grid.x(i) << "," << field[i] << "\n";
}

void write_front_tracks_csv(const std::string& path, const PdeRunResult& result) {
    auto out = open_out(path);
    std::size_t max_fronts = 0;
    for (const auto& f : result.tracks) max_fronts = std::max(max_fronts, f.size());
    out << "t";
    for (std::size_t j = 0; j < max_fronts; ++j) out << ",phi_" << j + 1 << ",orient_" << j + 1;
    out << "\n";
    for (std::size_t i = 0; i < result.track_times.size(); ++i) {
        out << result.track_times[i];
        for (std::size_t j = 0; j < max_fronts; ++j) {
            if (j < result.tracks[i].size())
                out << "," << result.tracks[i][j].position << ","
                    << orientation_tag(result.tracks[i][j].orientation);
            else
                out << ",nan,none";
        }
        out << "\n";
    }
}

void write_pde_events_csv(const std::string& path, const PdeRunResult& result) {
    auto out = open_out(path);
    out << "t,kind,i,j,position\n";
    for (const auto& e : result.annihilations)
        out << e.time << ",annihilation," << e.i << "," << e.j << ",nan\n";
    for (const auto& e : result.pinned)
        out << e.time << ",pinned," << e.index << ",-1," << e.position << "\n";
}

void write_section_csv(const std::string& path, const ManifoldSection& section) {
    auto out = open_out(path);
    out << "phi,u,p,in_window\n";
    for (std::size_t i = 0; i < section.phi.size(); ++i)
        out << section.phi[i] << "," << section.u[i] << "," << section.p[i] << ","
            << (section.in_window[i] ? 1 : 0) << "\n";
}

std::string stationary_report_json(const std::vector<StationaryFront>& fronts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : fronts) {
        nlohmann::json j;
        j["positions"] = f.positions;
        j["first"] = orientation_tag(f.first);
        std::visit(
            [&](const auto& k) {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, OneFrontKind>) {
                    j["kind"] = "one_front";
                    j["phi_star"] = k.phi_star;
                } else if constexpr (std::is_same_v<T, TwoFrontKind>) {
                    j["kind"] = "two_front";
                } else if constexpr (std::is_same_v<T, LocalizedKind>) {
                    j["kind"] = "localized_kind_" + std::to_string(k.kind);
                    j["left_chain"] = k.left_chain;
                    j["right_chain"] = k.right_chain;
                    if (k.psi_star) j["psi_star"] = *k.psi_star;
                } else {
                    j["kind"] = "periodic_grid";
                    j["zero_index"] = k.zero_index;
                    j["period_index"] = k.period_index;
                }
            },
            f.kind);
        nlohmann::json eigs = nlohmann::json::array();
        for (const auto& l : f.eigenvalues) eigs.push_back({{"re", l.real()}, {"im", l.imag()}});
        j["eigenvalues"] = eigs;
        j["residual"] = f.newton_residual;
        j["seed"] = f.seed;
        if (!f.warnings.empty()) j["warnings"] = f.warnings;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

void write_stationary_report(const std::string& path,
                             const std::vector<StationaryFront>& fronts) {
    auto out = open_out(path);
    out << stationary_report_json(fronts) << "\n";
}

}  // namespace acfront
