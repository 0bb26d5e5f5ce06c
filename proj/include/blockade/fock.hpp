#pragma once

// Truncated Fock-space operators and reference states for a single bosonic
// mode. Index n of every matrix is the photon number |n>.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace blockade {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// A dim x dim density operator. Holds the matrix by value; its physical
/// invariants are checked by `check_state`, not on construction.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  ComplexMatrix m_;
};

ComplexMatrix annihilation_op(std::size_t dim);
ComplexMatrix creation_op(std::size_t dim);
ComplexMatrix number_op(std::size_t dim);
/// a^dag a^dag a a = diag(n(n-1)).
ComplexMatrix kerr_op(std::size_t dim);

DensityMatrix fock_density(std::size_t n, std::size_t dim);

/// Truncated, renormalized |alpha><alpha|. Throws truncation_insufficient
/// when the weight lost beyond `dim` exceeds `max_tail`.
DensityMatrix coherent_density(Complex alpha, std::size_t dim,
                               double max_tail = 1e-10);

}  // namespace blockade
