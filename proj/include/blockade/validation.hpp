#pragma once

// Self-checks run by `blockade-lab validate`: analytic limits, the
// perturbative weak-drive correlation, and (full level) cross-validation
// against the Liouvillian oracle and the single- vs two-tone ratios.

#include <functional>
#include <string>
#include <vector>

#include "blockade/lindblad.hpp"
#include "blockade/model.hpp"

namespace blockade {

struct CheckResult {
  std::string name;
  bool passed = false;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Builds the generator under test for a model; the default wraps
/// LindbladGenerator. Injectable so faulty generators can be exercised.
using GeneratorFactory = std::function<Generator(const SystemParams&, const DriveSpec&)>;
GeneratorFactory default_generator_factory();

enum class ValidationLevel { quick, full };

std::vector<CheckResult> run_validation(ValidationLevel level,
                                        const GeneratorFactory& factory = default_generator_factory());

std::string format_checks(const std::vector<CheckResult>& checks);

/// Weak single-tone drive limit of g^(2) from the two lowest amplitudes,
/// 4 (delta^2 + gamma^2/4) / ((2 delta + 2U)^2 + gamma^2); at delta = 0 this
/// is (gamma^2/4) / (U^2 + gamma^2/4).
double perturbative_g2(double kerr_u, double delta = 0.0, double gamma = 1.0);

}  // namespace blockade
