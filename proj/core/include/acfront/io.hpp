#pragma once

#include <string>

#include "acfront/frontdyn.hpp"
#include "acfront/geometry.hpp"
#include "acfront/pde.hpp"
#include "acfront/stationary.hpp"

namespace acfront {

// Column layout of every product is fixed; all writers emit a header line.

void write_melnikov_csv(const std::string& path, const MelnikovFn& fn, double phi_min,
                        double phi_max, double step);

void write_trajectory_csv(const std::string& path, const FrontTrajectory& traj);
void write_trajectory_events_csv(const std::string& path, const FrontTrajectory& traj);

void write_snapshot_csv(const std::string& path, const Field& field);
void write_front_tracks_csv(const std::string& path, const PdeRunResult& result);
void write_pde_events_csv(const std::string& path, const PdeRunResult& result);

void write_section_csv(const std::string& path, const ManifoldSection& section);

std::string stationary_report_json(const std::vector<StationaryFront>& fronts);
void write_stationary_report(const std::string& path, const std::vector<StationaryFront>& fronts);

}  // namespace acfront
