#include "blockade/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "blockade/error.hpp"
#include "blockade/fock.hpp"
#include "blockade/observables.hpp"
#include "blockade/oracle.hpp"
#include "blockade/scenarios.hpp"

namespace blockade {

namespace {

Trajectory run_with(const GeneratorFactory& factory, const DensityMatrix& rho0, double t_end,
                    const SystemParams& params, const DriveSpec& drive,
                    const IntegratorOptions& opts) {
  return propagate_with(factory(params, drive), rho0, t_end, drive_step_cap(drive), opts);
}

CheckResult within(std::string name, double expected, double actual, double tol,
                   std::string detail = {}) {
  CheckResult r{std::move(name), std::abs(actual - expected) <= tol, expected, actual, tol,
                std::move(detail)};
  if (!std::isfinite(actual)) r.passed = false;
  return r;
}

CheckResult below(std::string name, double actual, double bound, std::string detail = {}) {
  return {std::move(name), std::isfinite(actual) && actual < bound, 0.0, actual, bound,
          std::move(detail)};
}

// Runs one check, turning exceptions into a failed result.
template <typename F>
void attempt(std::vector<CheckResult>& out, const std::string& name, F&& body) {
  try {
    body(out);
  } catch (const std::exception& e) {
    out.push_back({name, false, 0.0, std::nan(""), 0.0, std::string("error: ") + e.what()});
  }
}

void check_decay(std::vector<CheckResult>& out, const GeneratorFactory& factory) {
  SystemParams p;
  p.kerr_u = 10.0;
  p.dim = 6;
  const DriveSpec off({{0.0, 0.0}});
  const auto traj = run_with(factory, fock_density(1, p.dim), 5.0, p, off, {});
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    worst = std::max(worst, std::abs(traj.states[i](1, 1).real() - std::exp(-p.gamma * traj.times[i])));
  }
  out.push_back(within("single-photon decay P1(t) = exp(-t)", 0.0, worst, 1e-6, "max deviation on [0, 5]"));
}

void check_trace_drift(std::vector<CheckResult>& out, const GeneratorFactory& factory) {
  const Scenario s = builtin("fig1");
  const auto traj = run_with(factory, fock_density(0, s.params.dim), 2.0, s.params, s.drive, s.options);
  out.push_back(below("trace drift per step (fig1, t <= 2)", traj.stats.max_trace_drift, 1e-8));
}

void check_coherent(std::vector<CheckResult>& out) {
  const auto rho = coherent_density(0.4, 15);
  double worst = 0.0;
  for (int order = 2; order <= 5; ++order) worst = std::max(worst, std::abs(g_n(rho, order).value() - 1.0));
  out.push_back(within("coherent-state g(n) = 1, n = 2..5", 0.0, worst, 1e-8));
}

void check_perturbative(std::vector<CheckResult>& out) {
  SystemParams p;
  p.kerr_u = 10.0;
  p.dim = 10;
  const double expected = perturbative_g2(p.kerr_u);
  const auto rho = steady_state(liouvillian(p, 0.01));
  const double g2 = g_n(rho, 2).value();
  out.push_back(within("weak-drive steady-state g2 (null space)", expected, g2, 0.05 * expected));
}

void check_oracle(std::vector<CheckResult>& out, const GeneratorFactory& factory) {
  Scenario s = builtin("fig1");
  s.params.dim = 12;
  const double t_end = 5.0;
  const auto rk = run_with(factory, fock_density(0, s.params.dim), t_end, s.params, s.drive, s.options);
  const auto ref = piecewise_exponential_propagate(fock_density(0, s.params.dim), t_end, s.params,
                                                   s.drive, t_end / 8000.0);
  const double dist = trace_distance(rk.states.back(), ref.states.back());
  out.push_back(below("fig1 RK vs piecewise-exponential oracle (D=12, t=5)", dist, 1e-6,
                      "trace distance"));
}

void check_fig4(std::vector<CheckResult>& out, const GeneratorFactory& factory) {
  auto averages = [&](const Scenario& s) {
    const auto traj = run_with(factory, fock_density(0, s.params.dim), s.t_end, s.params, s.drive, s.options);
    const auto series = compute_series(traj);
    return std::array<double, 3>{window_average(series, Quantity::mean(), s.window),
                                 window_average(series, Quantity::population(1), s.window),
                                 window_average(series, Quantity::population(2), s.window)};
  };
  const auto single = averages(builtin("fig4_single"));
  const auto dual = averages(builtin("fig4_double"));
  out.push_back(within("two-tone/single-tone mean-photon ratio", 2.6, dual[0] / single[0], 0.3));
  out.push_back(within("two-tone/single-tone P1 ratio", 2.4, dual[1] / single[1], 0.3));
  out.push_back(within("two-tone/single-tone P2 ratio", 2.9, dual[2] / single[2], 0.4));
  CheckResult larger{"two-tone P2 > single-tone P1", dual[2] > single[1], single[1], dual[2], 0.0, {}};
  out.push_back(larger);
}

}  // namespace

double perturbative_g2(double kerr_u, double delta, double gamma) {
  const double num = 4.0 * (delta * delta + gamma * gamma / 4.0);
  const double two = 2.0 * delta + 2.0 * kerr_u;
  return num / (two * two + gamma * gamma);
}

GeneratorFactory default_generator_factory() {
  return [](const SystemParams& p, const DriveSpec& d) -> Generator {
    return LindbladGenerator(p, d);
  };
}

std::vector<CheckResult> run_validation(ValidationLevel level, const GeneratorFactory& factory) {
  std::vector<CheckResult> out;
  attempt(out, "single-photon decay", [&](auto& o) { check_decay(o, factory); });
  attempt(out, "trace drift", [&](auto& o) { check_trace_drift(o, factory); });
  attempt(out, "coherent-state g(n)", [&](auto& o) { check_coherent(o); });
  attempt(out, "weak-drive g2", [&](auto& o) { check_perturbative(o); });
  if (level == ValidationLevel::full) {
    attempt(out, "oracle comparison", [&](auto& o) { check_oracle(o, factory); });
    attempt(out, "fig4 ratios", [&](auto& o) { check_fig4(o, factory); });
  }
  return out;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  os.precision(6);
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": actual " << c.actual;
    if (c.expected != 0.0) os << ", expected " << c.expected;
    os << ", tolerance " << c.tolerance;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace blockade
