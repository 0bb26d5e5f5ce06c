#include "blockade/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "blockade/error.hpp"

namespace blockade {

namespace {

constexpr double kSpeedOfLight = 299792458.0;     // m/s
constexpr double kHbar = 1.054571817e-34;          // J s

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(Errc::invalid_parameter, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void validate(const SystemParams& params) {
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma)) {
    throw Error(Errc::invalid_parameter, "gamma must be positive");
  }
  if (!(params.kerr_u >= 0.0) || !std::isfinite(params.kerr_u)) {
    throw Error(Errc::invalid_parameter, "Kerr strength u must be non-negative");
  }
  if (!std::isfinite(params.delta)) throw Error(Errc::invalid_parameter, "delta must be finite");
  if (params.dim < 2) throw Error(Errc::invalid_dimension, "truncation dimension must be at least 2");
}

DriveSpec::DriveSpec(std::vector<DriveTone> tones) : tones_(std::move(tones)) {
  if (tones_.empty()) throw Error(Errc::invalid_parameter, "drive needs at least one tone");
  if (tones_.front().detuning != 0.0) {
    throw Error(Errc::invalid_parameter,
                "first tone must have detuning 0 (it defines the rotating frame)");
  }
  for (std::size_t k = 0; k < tones_.size(); ++k) {
    const auto& tone = tones_[k];
    if (!(tone.amplitude >= 0.0) || !std::isfinite(tone.amplitude)) {
      throw Error(Errc::invalid_parameter,
                  "tone " + std::to_string(k) + " amplitude must be finite and non-negative");
    }
    if (!std::isfinite(tone.detuning)) {
      throw Error(Errc::invalid_parameter, "tone " + std::to_string(k) + " detuning must be finite");
    }
    if (k > 0 && !(tone.detuning > tones_[k - 1].detuning)) {
      throw Error(Errc::invalid_parameter,
                  "tone detunings must be strictly increasing (tone " + std::to_string(k) + ")");
    }
  }
}

std::vector<double> DriveSpec::amplitudes() const {
  std::vector<double> out;
  out.reserve(tones_.size());
  for (const auto& t : tones_) out.push_back(t.amplitude);
  return out;
}

std::vector<double> DriveSpec::detunings() const {
  std::vector<double> out;
  out.reserve(tones_.size());
  for (const auto& t : tones_) out.push_back(t.detuning);
  return out;
}

double DriveSpec::max_detuning() const {
  double m = 0.0;
  for (const auto& t : tones_) m = std::max(m, std::abs(t.detuning));
  return m;
}

Complex drive_amplitude(double t, const DriveSpec& drive) {
  Complex eps = 0.0;
  for (const auto& tone : drive.tones()) {
    eps += tone.detuning == 0.0 ? Complex(tone.amplitude)
                                : tone.amplitude * std::polar(1.0, tone.detuning * t);
  }
  return eps;
}

std::optional<double> envelope_period(const DriveSpec& drive) {
  // Euclid on the nonzero detunings with a relative tolerance.
  double g = 0.0;
  double scale = drive.max_detuning();
  if (scale == 0.0) return std::nullopt;
  const double tol = 1e-9 * scale;
  for (const auto& tone : drive.tones()) {
    double b = std::abs(tone.detuning);
    if (b == 0.0) continue;
    double a = g;
    while (b > tol) {
      const double r = std::fmod(a, b);
      a = b;
      b = (r > b - tol) ? 0.0 : r;
    }
    g = a;
  }
  if (g < 1e-6 * scale) return std::nullopt;
  return 2.0 * std::numbers::pi / g;
}

RealVector bare_energies(const SystemParams& params) {
  RealVector h(idx(params.dim));
  for (std::size_t n = 0; n < params.dim; ++n) {
    const double x = static_cast<double>(n);
    h(idx(n)) = params.delta * x + params.kerr_u * x * (x - 1.0);
  }
  return h;
}

ComplexMatrix hamiltonian_frozen(Complex eps, const SystemParams& params) {
  const RealVector h = bare_energies(params);
  ComplexMatrix H = ComplexMatrix::Zero(idx(params.dim), idx(params.dim));
  for (std::size_t n = 0; n < params.dim; ++n) H(idx(n), idx(n)) = h(idx(n));
  // eps a populates the super-diagonal; its mirror keeps H exactly Hermitian.
  for (std::size_t n = 1; n < params.dim; ++n) {
    const Complex v = eps * std::sqrt(static_cast<double>(n));
    H(idx(n - 1), idx(n)) = v;
    H(idx(n), idx(n - 1)) = std::conj(v);
  }
  return H;
}

ComplexMatrix hamiltonian_at(double t, const SystemParams& params, const DriveSpec& drive) {
  return hamiltonian_frozen(drive_amplitude(t, drive), params);
}

std::vector<double> resonant_detunings(int n_target, double kerr_u) {
  if (n_target < 1) throw Error(Errc::invalid_parameter, "target photon number must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_target));
  for (int k = 0; k < n_target; ++k) out.push_back(2.0 * k * kerr_u);
  return out;
}

double eigen_energy(int n, double omega_a, double kerr_u) {
  if (n < 0) throw Error(Errc::out_of_range, "photon number must be non-negative");
  const double x = n;
  return (x + 0.5) * omega_a + kerr_u * x * (x - 1.0);
}

PhysicalConversion params_from_physical(const PhysicalParams& phys) {
  require_positive(phys.wavelength, "wavelength");
  require_positive(phys.quality_factor, "quality factor");
  require_positive(phys.v_eff, "effective mode volume");
  require_positive(phys.n1, "n1");
  require_positive(phys.n2, "n2");

  PhysicalConversion out;
  out.omega_a = 2.0 * std::numbers::pi * kSpeedOfLight / phys.wavelength;
  out.gamma = out.omega_a / phys.quality_factor;
  out.kerr_u = kHbar * out.omega_a * out.omega_a * kSpeedOfLight * phys.n2 /
               (phys.n1 * phys.n1 * phys.v_eff);
  out.u_over_gamma = out.kerr_u / out.gamma;
  for (double p : phys.input_powers) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(Errc::invalid_parameter, "input power must be non-negative and finite");
    }
    const double eps = std::sqrt(out.gamma * p / (kHbar * out.omega_a));
    out.amplitudes_over_gamma.push_back(eps / out.gamma);
  }
  return out;
}

}  // namespace blockade
