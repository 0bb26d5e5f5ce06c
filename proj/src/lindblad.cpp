#include "blockade/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "blockade/error.hpp"

namespace blockade {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Fifth- minus fourth-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const ComplexMatrix& err, const ComplexMatrix& y0, const ComplexMatrix& y1,
                  double abs_tol, double rel_tol) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < err.cols(); ++j) {
    for (Eigen::Index i = 0; i < err.rows(); ++i) {
      const double scale = abs_tol + rel_tol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
      worst = std::max(worst, std::abs(err(i, j)) / scale);
    }
  }
  return worst;
}

double tail_population(const ComplexMatrix& rho) {
  const Eigen::Index d = rho.rows();
  double tail = rho(d - 1, d - 1).real();
  if (d >= 2) tail += rho(d - 2, d - 2).real();
  return tail;
}

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(6);
  os << t;
  return os.str();
}

}  // namespace

void validate(const IntegratorOptions& opts) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(opts.abs_tol) || !positive(opts.rel_tol) || !positive(opts.max_step) ||
      !positive(opts.output_interval) || !positive(opts.truncation_tail_tol)) {
    throw Error(Errc::invalid_parameter, "integrator options must all be positive and finite");
  }
  if (opts.max_step > opts.output_interval) {
    throw Error(Errc::invalid_parameter, "max_step must not exceed output_interval");
  }
}

LindbladGenerator::LindbladGenerator(const SystemParams& params, DriveSpec drive)
    : dim_(params.dim),
      gamma_(params.gamma),
      energies_(bare_energies(params)),
      sqrt_n_(idx(params.dim + 1)),
      drive_(std::move(drive)) {
  validate(params);
  for (std::size_t n = 0; n <= dim_; ++n) sqrt_n_(idx(n)) = std::sqrt(static_cast<double>(n));
}

void LindbladGenerator::operator()(double t, const ComplexMatrix& rho, ComplexMatrix& out) const {
  apply_frozen(drive_amplitude(t, drive_), rho, out);
}

void LindbladGenerator::apply_frozen(Complex eps, const ComplexMatrix& rho,
                                     ComplexMatrix& out) const {
  const Eigen::Index d = idx(dim_);
  if (rho.rows() != d || rho.cols() != d) {
    throw Error(Errc::dimension_mismatch, "density matrix dimension " +
                                              std::to_string(rho.rows()) + " does not match model dimension " +
                                              std::to_string(d));
  }
  out.resize(d, d);
  const Complex minus_i(0.0, -1.0);
  const Complex eps_c = std::conj(eps);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      // [eps a + conj(eps) a^dag, rho]_{mn}
      Complex comm = (energies_(m) - energies_(n)) * rho(m, n);
      if (m + 1 < d) comm += eps * sqrt_n_(m + 1) * rho(m + 1, n);
      if (n >= 1) comm -= eps * sqrt_n_(n) * rho(m, n - 1);
      if (m >= 1) comm += eps_c * sqrt_n_(m) * rho(m - 1, n);
      if (n + 1 < d) comm -= eps_c * sqrt_n_(n + 1) * rho(m, n + 1);

      Complex diss = -0.5 * static_cast<double>(m + n) * rho(m, n);
      if (m + 1 < d && n + 1 < d) diss += sqrt_n_(m + 1) * sqrt_n_(n + 1) * rho(m + 1, n + 1);

      out(m, n) = minus_i * comm + gamma_ * diss;
    }
  }
}

ComplexMatrix lindblad_rhs(double t, const DensityMatrix& rho, const SystemParams& params,
                           const DriveSpec& drive) {
  LindbladGenerator gen(params, drive);
  ComplexMatrix out;
  gen(t, rho.matrix(), out);
  return out;
}

double drive_step_cap(const DriveSpec& drive) {
  const double fastest = drive.max_detuning();
  if (fastest == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / fastest / 20.0;
}

Trajectory propagate(const DensityMatrix& rho0, double t_end, const SystemParams& params,
                     const DriveSpec& drive, const IntegratorOptions& opts) {
  validate(params);
  if (rho0.dim() != params.dim) {
    throw Error(Errc::dimension_mismatch, "initial state dimension does not match params.dim");
  }
  const LindbladGenerator gen(params, drive);
  return propagate_with(std::cref(gen), rho0, t_end, drive_step_cap(drive), opts);
}

Trajectory propagate_with(const Generator& rhs, const DensityMatrix& rho0, double t_end,
                          double step_cap, const IntegratorOptions& opts) {
  validate(opts);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(Errc::invalid_parameter, "t_end must be positive and finite");
  }
  const Eigen::Index d = rho0.matrix().rows();
  if (d == 0 || rho0.matrix().cols() != d) {
    throw Error(Errc::dimension_mismatch, "initial state must be a non-empty square matrix");
  }

  const double cap = std::min(opts.max_step, step_cap);
  const double h_min = 1e-13 * std::max(1.0, t_end);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  ComplexMatrix y = rho0.matrix();
  ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), k5(d, d), k6(d, d), k7(d, d);
  ComplexMatrix stage(d, d), y_new(d, d), err(d, d);

  StepStats& stats = traj.stats;
  stats.min_step = std::numeric_limits<double>::infinity();

  double t = 0.0;
  double h = std::min(cap, 1e-3);
  std::size_t sample = 1;
  auto sample_time = [&](std::size_t k) {
    const double ts = static_cast<double>(k) * opts.output_interval;
    return ts > t_end - 1e-9 * opts.output_interval ? t_end : ts;
  };
  double next_sample = sample_time(sample);

  while (t < t_end) {
    const double remaining = next_sample - t;
    const bool clipped = h >= remaining;
    const double step = clipped ? remaining : h;

    rhs(t, y, k1);
    stage = y + step * (a21 * k1);
    rhs(t + c2 * step, stage, k2);
    stage = y + step * (a31 * k1 + a32 * k2);
    rhs(t + c3 * step, stage, k3);
    stage = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * step, stage, k4);
    stage = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * step, stage, k5);
    stage = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + step, stage, k6);
    y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + step, y_new, k7);
    stats.rhs_evaluations += 7;

    err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double norm = error_norm(err, y, y_new, opts.abs_tol, opts.rel_tol);
    if (!std::isfinite(norm)) {
      throw Error(Errc::stiffness, "non-finite error estimate at t=" + format_time(t));
    }

    const double factor =
        norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);

    if (norm <= 1.0) {
      ++stats.accepted;
      stats.min_step = std::min(stats.min_step, step);
      stats.max_step = std::max(stats.max_step, step);
      t = clipped ? next_sample : t + step;

      const Complex tr = y_new.trace();
      stats.max_trace_drift = std::max(stats.max_trace_drift, std::abs(tr - 1.0));
      y = 0.5 * (y_new + y_new.adjoint());
      y /= y.trace().real();

      // A clipped step says nothing about the size the controller wants.
      if (!clipped) h = std::min(cap, step * factor);
      else h = std::min(cap, std::max(h, step * factor));

      if (t == next_sample) {
        const double tail = tail_population(y);
        if (tail > opts.truncation_tail_tol) {
          throw Error(Errc::truncation_insufficient,
                      "top-two Fock population " + format_time(tail) + " exceeds " +
                          format_time(opts.truncation_tail_tol) + " at t=" + format_time(t) +
                          "; increase dim");
        }
        traj.times.push_back(t);
        traj.states.emplace_back(y);
        ++sample;
        if (t < t_end) next_sample = sample_time(sample);
      }
    } else {
      ++stats.rejected;
      h = step * std::max(0.2, factor);
      if (h < h_min) {
        throw Error(Errc::stiffness, "step size underflow (h=" + format_time(h) + ") at t=" +
                                         format_time(t));
      }
    }
  }
  if (stats.accepted == 0) stats.min_step = 0.0;
  return traj;
}

StateDiagnostics check_state(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  StateDiagnostics diag;
  if (m.size() == 0) return diag;
  diag.trace_deviation = std::abs(m.trace() - 1.0);
  diag.hermiticity_deviation = 0.5 * (m - m.adjoint()).cwiseAbs().maxCoeff();
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = es.eigenvalues().minCoeff();
  diag.tail_population = tail_population(m);
  return diag;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::dimension_mismatch, "trace distance of unequal dims");
  const ComplexMatrix diff = a.matrix() - b.matrix();
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace blockade
