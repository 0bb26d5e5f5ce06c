#include "blockade/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "blockade/csv.hpp"
#include "blockade/error.hpp"

namespace blockade {

Simulation simulate(const Scenario& s, const CriteriaConfig& config) {
  validate(s);
  Simulation sim;
  sim.trajectory = propagate(fock_density(0, s.params.dim), s.t_end, s.params, s.drive, s.options);
  sim.series = compute_series(sim.trajectory, 5, config.max_order);
  sim.criteria = evaluate_criteria(sim.series, s.target_n, s.window, s.snapshot_time,
                                   envelope_period(s.drive), config);
  sim.min_eigenvalue = 1.0;
  for (const auto& rho : sim.trajectory.states) {
    const auto d = check_state(rho);
    sim.max_tail = std::max(sim.max_tail, d.tail_population);
    sim.min_eigenvalue = std::min(sim.min_eigenvalue, d.min_eigenvalue);
  }
  return sim;
}

std::string format_run_report(const RunReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "scenario: " << r.scenario << "\n";
  for (const auto& note : r.notes) os << "note: " << note << "\n";
  os << format_report(r.criteria);
  os << "steps: " << r.step_stats.accepted << " accepted, " << r.step_stats.rejected
     << " rejected, " << r.step_stats.rhs_evaluations << " rhs evaluations\n";
  os << "max trace drift per step: " << r.max_trace_drift << "\n";
  os << "max truncation tail: " << r.max_tail << "\n";
  os << "min eigenvalue: " << r.min_eigenvalue << "\n";
  os << "wall time: " << r.wall_seconds << " s\n";
  for (const auto& p : r.outputs) os << "wrote: " << p.string() << "\n";
  return os.str();
}

RunReport run_scenario(const Scenario& s, const std::filesystem::path& out_dir,
                       std::vector<std::string> notes) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.scenario = s.name;
  report.notes = std::move(notes);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::io, "cannot create output directory " + out_dir.string());

  const auto series_path = out_dir / (s.name + "_series.csv");
  const auto envelope_path = out_dir / (s.name + "_envelope.csv");
  const auto report_path = out_dir / (s.name + "_report.txt");
  try {
    const Simulation sim = simulate(s);
    report.criteria = sim.criteria;
    report.step_stats = sim.trajectory.stats;
    report.max_tail = sim.max_tail;
    report.max_trace_drift = sim.trajectory.stats.max_trace_drift;
    report.min_eigenvalue = sim.min_eigenvalue;

    write_series_csv(series_path, sim.series);
    report.outputs.push_back(series_path);
    write_envelope_csv(envelope_path, sim.series, s.drive);
    report.outputs.push_back(envelope_path);
    report.outputs.push_back(report_path);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw Error(Errc::io, "cannot write " + report_path.string());
    out << format_run_report(report);
    if (!out) throw Error(Errc::io, "write failed for " + report_path.string());
  } catch (const Error& e) {
    for (const auto& p : {series_path, envelope_path, report_path}) std::filesystem::remove(p, ec);
    throw Error(e.code(), "scenario " + s.name + ": " + e.what());
  }
  return report;
}

std::filesystem::path sweep_summary_path(const Scenario& base, const std::string& axis,
                                         const std::filesystem::path& out_dir) {
  return out_dir / (base.name + "_sweep_" + axis + ".csv");
}

std::vector<SweepPoint> run_sweep(const Scenario& base, const std::string& axis,
                                  const std::vector<std::string>& values,
                                  const std::filesystem::path& out_dir, unsigned jobs) {
  std::vector<SweepPoint> points(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepPoint& point = points[i];
      point.value = values[i];
      try {
        Scenario s = base;
        auto notes = apply_override(s, axis, values[i]);
        s.name = base.name + "_" + axis + "_" + values[i];
        point.report = run_scenario(s, out_dir, std::move(notes));
      } catch (const std::exception& e) {
        point.error = e.what();
      }
    }
  };
  const unsigned threads = std::clamp<unsigned>(jobs, 1, std::max<std::size_t>(1, values.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  const auto summary = sweep_summary_path(base, axis, out_dir);
  std::ofstream out(summary, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + summary.string());
  out << axis << ",status,mean_g2,mean_g3,mean_g4,mean_g5,g_criterion,p_criterion\n";
  for (const auto& p : points) {
    out << p.value;
    if (!p.report) {
      out << ",error,nan,nan,nan,nan,,\n";
      continue;
    }
    const auto& c = p.report->criteria;
    out << ",ok";
    for (int order = 2; order <= 5; ++order) {
      const auto it = c.g_average.find(order);
      out << ',' << (it == c.g_average.end() ? std::string("nan") : format_number(it->second));
    }
    out << ',' << (c.g_pass ? "pass" : "fail") << ',' << (c.p_pass ? "pass" : "fail") << '\n';
  }
  return points;
}

}  // namespace blockade
