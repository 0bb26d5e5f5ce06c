#pragma once

// Time-dependent Lindblad master equation for the driven Kerr mode,
//   drho/dt = -i[H(t), rho] + (gamma/2)(2 a rho a^dag - a^dag a rho - rho a^dag a),
// and an adaptive Dormand-Prince 5(4) propagator over the dense D x D state.

#include <cstddef>
#include <functional>
#include <vector>

#include "blockade/fock.hpp"
#include "blockade/model.hpp"

namespace blockade {

struct IntegratorOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double max_step = 0.01;
  double output_interval = 0.01;
  double truncation_tail_tol = 1e-8;

  bool operator==(const IntegratorOptions&) const = default;
};

void validate(const IntegratorOptions& opts);

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double min_step = 0.0;
  double max_step = 0.0;
  // Largest |tr rho - 1| seen after a step, before renormalization.
  double max_trace_drift = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  StepStats stats;
};

/// Right-hand side callback: writes d(rho)/dt at time t into `out`.
using Generator = std::function<void(double t, const ComplexMatrix& rho, ComplexMatrix& out)>;

/// The Kerr-mode Lindblad generator evaluated element-wise in O(D^2): the
/// bare Hamiltonian is diagonal and a, a^dag only couple neighbouring levels.
class LindbladGenerator {
 public:
  LindbladGenerator(const SystemParams& params, DriveSpec drive);

  void operator()(double t, const ComplexMatrix& rho, ComplexMatrix& out) const;
  void apply_frozen(Complex eps, const ComplexMatrix& rho, ComplexMatrix& out) const;

  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  double gamma_;
  RealVector energies_;
  RealVector sqrt_n_;  // sqrt(n) for n = 0..dim
  DriveSpec drive_;
};

ComplexMatrix lindblad_rhs(double t, const DensityMatrix& rho, const SystemParams& params,
                           const DriveSpec& drive);

/// Largest step the drive permits: one twentieth of the fastest tone period.
double drive_step_cap(const DriveSpec& drive);

Trajectory propagate(const DensityMatrix& rho0, double t_end, const SystemParams& params,
                     const DriveSpec& drive, const IntegratorOptions& opts = {});

/// Generic form of `propagate` for any Lindblad-type generator. Steps never
/// exceed min(opts.max_step, step_cap).
Trajectory propagate_with(const Generator& rhs, const DensityMatrix& rho0, double t_end,
                          double step_cap, const IntegratorOptions& opts);

struct StateDiagnostics {
  double trace_deviation = 0.0;
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  double tail_population = 0.0;  // P_{D-1} + P_{D-2}
};

StateDiagnostics check_state(const DensityMatrix& rho);

/// 0.5 * sum |eigenvalues(a - b)| for Hermitian a, b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace blockade
