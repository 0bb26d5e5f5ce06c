#pragma once

// Kerr resonator model in the frame rotating with the first drive tone.
// Units: hbar = 1, rates in multiples of gamma, times in multiples of 1/gamma.

#include <cstddef>
#include <optional>
#include <vector>

#include "blockade/fock.hpp"

namespace blockade {

struct SystemParams {
  double delta = 0.0;   // omega_a - omega_0
  double kerr_u = 10.0;
  double gamma = 1.0;
  std::size_t dim = 15;

  bool operator==(const SystemParams&) const = default;
};

/// Throws invalid_parameter / invalid_dimension on gamma <= 0, kerr_u < 0,
/// dim < 2 or non-finite fields.
void validate(const SystemParams& params);

struct DriveTone {
  double amplitude = 0.0;
  double detuning = 0.0;  // omega_k - omega_0

  bool operator==(const DriveTone&) const = default;
};

/// Ordered tones of a multi-tone coherent drive. The first tone anchors the
/// rotating frame (detuning 0); detunings are strictly increasing and all
/// amplitudes are real and non-negative.
class DriveSpec {
 public:
  DriveSpec() = default;
  explicit DriveSpec(std::vector<DriveTone> tones);

  const std::vector<DriveTone>& tones() const { return tones_; }
  std::size_t size() const { return tones_.size(); }
  std::vector<double> amplitudes() const;
  std::vector<double> detunings() const;
  double max_detuning() const;
  bool is_static() const { return tones_.size() <= 1; }

  bool operator==(const DriveSpec&) const = default;

 private:
  std::vector<DriveTone> tones_;
};

/// eps'(t) = eps_0 + sum_k eps_k exp(i delta_k t).
Complex drive_amplitude(double t, const DriveSpec& drive);

/// Period of |eps'(t)|^2: 2 pi / gcd of the detunings. Empty for a single
/// tone or incommensurate detunings.
std::optional<double> envelope_period(const DriveSpec& drive);

/// Diagonal of the undriven Hamiltonian, delta n + U n (n - 1).
RealVector bare_energies(const SystemParams& params);

/// H(t) = delta a^dag a + U a^dag a^dag a a + eps'(t) a + conj(eps'(t)) a^dag.
ComplexMatrix hamiltonian_at(double t, const SystemParams& params, const DriveSpec& drive);

/// Same Hamiltonian with the drive amplitude held at `eps`.
ComplexMatrix hamiltonian_frozen(Complex eps, const SystemParams& params);

/// Tone detunings that drive |k-1> -> |k> resonantly for k = 1..n_target:
/// [0, 2U, 4U, ..., 2(n_target-1)U].
std::vector<double> resonant_detunings(int n_target, double kerr_u);

/// Lab-frame energy of |n>, (n + 1/2) omega_a + U n (n - 1).
double eigen_energy(int n, double omega_a, double kerr_u);

struct PhysicalParams {
  double wavelength = 1550e-9;       // m
  double quality_factor = 2.5e9;
  double v_eff = 196e-18;            // m^3
  double n1 = 1.4;
  double n2 = 4e-14;                 // m^2 / W
  std::vector<double> input_powers;  // W, one per tone
};

struct PhysicalConversion {
  double omega_a = 0.0;  // rad/s
  double gamma = 0.0;    // 1/s
  double kerr_u = 0.0;   // rad/s
  double u_over_gamma = 0.0;
  std::vector<double> amplitudes_over_gamma;
};

/// Converts resonator and drive parameters to simulation units. Every tone
/// is evaluated at omega_a; the tone offsets are a few tens of gamma and do
/// not register at optical frequencies.
PhysicalConversion params_from_physical(const PhysicalParams& phys);

}  // namespace blockade
