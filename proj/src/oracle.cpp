#include "blockade/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "blockade/error.hpp"
#include "blockade/expm.hpp"

namespace blockade {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_oracle_dim(std::size_t dim) {
  if (dim > kOracleMaxDim) {
    throw Error(Errc::oracle_scale, "oracle supports dim <= " + std::to_string(kOracleMaxDim) +
                                        ", got " + std::to_string(dim));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// Hamiltonian commutator superoperator -i(I (x) H - H^T (x) I).
ComplexMatrix commutator_super(const ComplexMatrix& h) {
  const auto d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return Complex(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
}

}  // namespace

Eigen::VectorXcd vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

ComplexMatrix unvectorize(const Eigen::VectorXcd& v, std::size_t dim) {
  if (static_cast<std::size_t>(v.size()) != dim * dim) {
    throw Error(Errc::dimension_mismatch, "vector length is not dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), idx(dim), idx(dim));
}

Superoperator liouvillian(const SystemParams& params, Complex eps) {
  validate(params);
  const std::size_t d = params.dim;
  const ComplexMatrix a = annihilation_op(d);
  const ComplexMatrix ad = creation_op(d);
  const ComplexMatrix n = ad * a;
  const ComplexMatrix id = ComplexMatrix::Identity(idx(d), idx(d));
  const ComplexMatrix h = params.delta * n + params.kerr_u * (ad * ad * a * a) + eps * a +
                          std::conj(eps) * ad;

  Superoperator l;
  l.dim = d;
  // vec(A X B) = (B^T (x) A) vec(X)
  l.matrix = commutator_super(h) +
             params.gamma * (kron(ad.transpose(), a) - 0.5 * kron(id, n) - 0.5 * kron(n.transpose(), id));
  return l;
}

DensityMatrix steady_state(const Superoperator& l) {
  Eigen::BDCSVD<ComplexMatrix> svd(l.matrix, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index k = sv.size();
  if (k < 2 || sv(k - 2) <= 1e-6) {
    throw Error(Errc::non_unique_steady_state, "Liouvillian null space is degenerate");
  }
  const Eigen::VectorXcd null = svd.matrixV().col(k - 1);
  ComplexMatrix rho = unvectorize(null, l.dim);
  rho /= rho.trace();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix evolve_static(const Superoperator& l, const DensityMatrix& rho, double t) {
  if (rho.dim() != l.dim) throw Error(Errc::dimension_mismatch, "state and generator differ in dim");
  const ComplexMatrix propagator = expm(t * l.matrix);
  return DensityMatrix(unvectorize(propagator * vectorize(rho.matrix()), l.dim));
}

Trajectory piecewise_exponential_propagate(const DensityMatrix& rho0, double t_end,
                                           const SystemParams& params, const DriveSpec& drive,
                                           double slice_dt, std::size_t sample_every) {
  validate(params);
  require_oracle_dim(params.dim);
  if (rho0.dim() != params.dim) throw Error(Errc::dimension_mismatch, "initial state dim mismatch");
  if (!(t_end > 0.0)) throw Error(Errc::invalid_parameter, "t_end must be positive");
  const double fastest = drive.max_detuning();
  if (!(slice_dt > 0.0) ||
      (fastest > 0.0 && slice_dt > 2.0 * std::numbers::pi / fastest / 50.0 * (1.0 + 1e-12))) {
    throw Error(Errc::invalid_parameter,
                "slice_dt must be positive and at most 1/50 of the fastest drive period");
  }

  // L(eps) = L0 + eps La + conj(eps) Lad.
  const SparseMatrix l0 = liouvillian(params, 0.0).matrix.sparseView();
  const SparseMatrix l_a = commutator_super(annihilation_op(params.dim)).sparseView();
  const SparseMatrix l_ad = commutator_super(creation_op(params.dim)).sparseView();

  const std::size_t slices = static_cast<std::size_t>(std::ceil(t_end / slice_dt - 1e-9));
  const double dt = t_end / static_cast<double>(slices);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  Eigen::VectorXcd v = vectorize(rho0.matrix());
  SparseMatrix l(l0.rows(), l0.cols());
  for (std::size_t k = 0; k < slices; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dt;
    const Complex eps = drive_amplitude(mid, drive);
    l = l0 + eps * l_a + std::conj(eps) * l_ad;
    v = expm_multiply(l, v, dt);
    ++traj.stats.accepted;
    const bool last = k + 1 == slices;
    if (last || (sample_every > 0 && (k + 1) % sample_every == 0)) {
      traj.times.push_back(last ? t_end : static_cast<double>(k + 1) * dt);
      traj.states.emplace_back(unvectorize(v, params.dim));
    }
  }
  traj.stats.min_step = traj.stats.max_step = dt;
  return traj;
}

}  // namespace blockade
