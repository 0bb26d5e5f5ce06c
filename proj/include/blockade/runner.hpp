#pragma once

// Scenario execution behind the blockade-lab CLI: single runs, parameter
// sweeps and the physical-unit conversion.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "blockade/lindblad.hpp"
#include "blockade/observables.hpp"
#include "blockade/scenarios.hpp"

namespace blockade {

struct Simulation {
  Trajectory trajectory;
  ObservableSeries series;
  CriteriaReport criteria;
  double max_tail = 0.0;
  double min_eigenvalue = 0.0;
};

/// Propagates from vacuum and evaluates the blockade criteria.
Simulation simulate(const Scenario& s, const CriteriaConfig& config = {});

struct RunReport {
  std::string scenario;
  CriteriaReport criteria;
  std::vector<std::filesystem::path> outputs;
  double wall_seconds = 0.0;
  StepStats step_stats;
  double max_tail = 0.0;
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::string> notes;
};

/// Writes <name>_series.csv, <name>_envelope.csv and <name>_report.txt into
/// out_dir. Removes any partial output and rethrows with the scenario name
/// on failure.
RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir,
                       std::vector<std::string> notes = {});

std::string format_run_report(const RunReport& r);

struct SweepPoint {
  std::string value;
  std::optional<RunReport> report;
  std::string error;
};

/// One run per value of `axis` (any override key), at most `jobs` at a
/// time. Writes <name>_sweep_<axis>.csv with window-averaged g values, one
/// row per point in sweep order. Failed points are recorded, not fatal.
std::vector<SweepPoint> run_sweep(const Scenario& base, const std::string& axis,
                                  const std::vector<std::string>& values,
                                  const std::filesystem::path& out_dir, unsigned jobs = 1);

std::filesystem::path sweep_summary_path(const Scenario& base, const std::string& axis,
                                         const std::filesystem::path& out_dir);

}  // namespace blockade
