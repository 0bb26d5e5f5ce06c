#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace blockade {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>>;

/// Matrix exponential by scaling and squaring with a diagonal Pade
/// approximant of degree 3, 5, 7, 9 or 13 chosen from the 1-norm.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// exp(t a) v without forming the exponential: truncated Taylor series on
/// t a / s applied s times, with s chosen from the 1-norm.
Eigen::VectorXcd expm_multiply(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& v, double t = 1.0);
Eigen::VectorXcd expm_multiply(const SparseMatrix& a, const Eigen::VectorXcd& v, double t = 1.0);

}  // namespace blockade
