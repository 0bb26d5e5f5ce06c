// blockade-lab: run, sweep and validate multi-tone Kerr-resonator scenarios.
//
// Exit codes: 0 success, 1 usage error, 2 numerical or validation failure.

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockade/error.hpp"
#include "blockade/model.hpp"
#include "blockade/runner.hpp"
#include "blockade/scenarios.hpp"
#include "blockade/validation.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kFailure = 2;

int exit_code_for(blockade::Errc code) {
  switch (code) {
    case blockade::Errc::unknown_scenario:
    case blockade::Errc::parse:
    case blockade::Errc::io:
      return kUsage;
    default:
      return kFailure;
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario lookup and overrides are user input: any failure is a usage error.
blockade::ParsedScenario prepare(const std::string& ref, const std::vector<std::string>& overrides) {
  try {
    auto parsed = blockade::resolve_scenario(ref);
    for (const auto& kv : overrides) {
      auto notes = blockade::apply_override(parsed.scenario, kv);
      parsed.notes.insert(parsed.notes.end(), notes.begin(), notes.end());
    }
    return parsed;
  } catch (const blockade::Error& e) {
    throw UsageError(std::string(blockade::to_string(e.code())) + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiphoton blockade simulator for a Kerr resonator under multi-tone drive"};
  app.require_subcommand(1);

  std::string ref;
  std::string out_dir = "out";
  std::vector<std::string> overrides;

  auto* run = app.add_subcommand("run", "Propagate one scenario and write CSV series and a report");
  run->add_option("scenario", ref, "Builtin name (fig1, fig5, ...) or scenario file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--set", overrides, "Override key=value (repeatable)");

  std::string axis;
  std::vector<std::string> values;
  unsigned jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a scenario once per value of one parameter");
  sweep->add_option("scenario", ref, "Builtin name or scenario file")->required();
  sweep->add_option("--axis", axis, "Parameter key (u, dim, t_end, eps<k>, ...)")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--jobs", jobs, "Concurrent sweep points")->check(CLI::PositiveNumber);
  sweep->add_option("--set", overrides, "Override key=value applied before sweeping");

  bool full = false;
  auto* validate = app.add_subcommand("validate", "Run analytic and oracle self-checks");
  validate->add_flag("--full", full, "Include oracle cross-validation and single/two-tone ratios");

  blockade::PhysicalParams phys;
  double wavelength_nm = 1550.0;
  double veff_um3 = 196.0;
  auto* convert = app.add_subcommand("convert", "Convert physical parameters to simulation units");
  convert->add_option("--wavelength-nm", wavelength_nm, "Resonance wavelength [nm]")->capture_default_str();
  convert->add_option("--q", phys.quality_factor, "Quality factor omega_a/gamma")->capture_default_str();
  convert->add_option("--veff-um3", veff_um3, "Effective mode volume [um^3]")->capture_default_str();
  convert->add_option("--n1", phys.n1, "Linear refractive index")->capture_default_str();
  convert->add_option("--n2", phys.n2, "Nonlinear refractive index [m^2/W]")->capture_default_str();
  convert->add_option("--power-w", phys.input_powers, "Input power per tone [W]")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (run->parsed()) {
      const auto parsed = prepare(ref, overrides);
      const auto report = blockade::run_scenario(parsed.scenario, out_dir, parsed.notes);
      std::cout << blockade::format_run_report(report);
      return EXIT_SUCCESS;
    }
    if (sweep->parsed()) {
      const auto parsed = prepare(ref, overrides);
      const auto points = blockade::run_sweep(parsed.scenario, axis, values, out_dir, jobs);
      bool failed = false;
      for (const auto& p : points) {
        if (p.report) {
          std::cout << axis << "=" << p.value << ": g criterion "
                    << (p.report->criteria.g_pass ? "PASS" : "FAIL") << ", P criterion "
                    << (p.report->criteria.p_pass ? "PASS" : "FAIL") << "\n";
        } else {
          failed = true;
          std::cout << axis << "=" << p.value << ": ERROR " << p.error << "\n";
        }
      }
      std::cout << "summary: " << blockade::sweep_summary_path(parsed.scenario, axis, out_dir).string()
                << "\n";
      return failed ? kFailure : EXIT_SUCCESS;
    }
    if (validate->parsed()) {
      const auto checks = blockade::run_validation(full ? blockade::ValidationLevel::full
                                                        : blockade::ValidationLevel::quick);
      std::cout << blockade::format_checks(checks);
      for (const auto& c : checks) {
        if (!c.passed) return kFailure;
      }
      return EXIT_SUCCESS;
    }
    if (convert->parsed()) {
      phys.wavelength = wavelength_nm * 1e-9;
      phys.v_eff = veff_um3 * 1e-18;
      const auto c = blockade::params_from_physical(phys);
      std::cout.precision(6);
      std::cout << "omega_a = " << c.omega_a << " rad/s\n"
                << "gamma = " << c.gamma << " 1/s\n"
                << "U = " << c.kerr_u << " rad/s\n"
                << "U/gamma = " << c.u_over_gamma << "\n";
      for (std::size_t k = 0; k < c.amplitudes_over_gamma.size(); ++k) {
        std::cout << "eps" << k << "/gamma = " << c.amplitudes_over_gamma[k] << "\n";
      }
      return EXIT_SUCCESS;
    }
  } catch (const UsageError& e) {
    std::cerr << "error (" << e.what() << ")\n";
    return kUsage;
  } catch (const blockade::Error& e) {
    std::cerr << "error (" << blockade::to_string(e.code()) << "): " << e.what() << "\n";
    if (e.code() == blockade::Errc::invalid_parameter && convert->parsed()) return kUsage;
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
