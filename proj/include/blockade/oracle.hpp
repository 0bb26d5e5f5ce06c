#pragma once

// Reference implementations built on the full D^2 x D^2 Liouvillian. Slow
// and memory hungry (D <= 12), and independent of the element-wise generator
// used by `propagate`.

#include <cstddef>

#include "blockade/fock.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/model.hpp"

namespace blockade {

inline constexpr std::size_t kOracleMaxDim = 12;

/// Generator acting on column-stacked density matrices: vec(drho/dt) = L vec(rho).
struct Superoperator {
  std::size_t dim = 0;
  ComplexMatrix matrix;
};

Eigen::VectorXcd vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const Eigen::VectorXcd& v, std::size_t dim);

/// Liouvillian with the drive amplitude frozen at `eps`, assembled from
/// Kronecker products of the Fock operators.
Superoperator liouvillian(const SystemParams& params, Complex eps);

/// Unique null vector of L as a unit-trace density matrix. Throws
/// non_unique_steady_state if the second-smallest singular value <= 1e-6.
DensityMatrix steady_state(const Superoperator& l);

/// rho(t) = exp(t L) rho for a time-independent generator.
DensityMatrix evolve_static(const Superoperator& l, const DensityMatrix& rho, double t);

/// Freezes eps'(t) at each slice midpoint and applies exp(dt L) to the
/// state; second order in the slice width. Records a sample every
/// `sample_every` slices plus the final state (0: endpoints only).
Trajectory piecewise_exponential_propagate(const DensityMatrix& rho0, double t_end,
                                           const SystemParams& params, const DriveSpec& drive,
                                           double slice_dt, std::size_t sample_every = 0);

}  // namespace blockade
