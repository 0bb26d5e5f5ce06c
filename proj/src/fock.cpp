#include "blockade/fock.hpp"

#include <cmath>
#include <string>

#include "blockade/error.hpp"

namespace blockade {

namespace {

void require_dim(std::size_t dim) {
  if (dim == 0) throw Error(Errc::invalid_dimension, "Fock dimension must be at least 1");
}

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Poisson weight beyond the truncation, summed directly from the tail so
// that small values do not cancel against 1.
double poisson_tail(double nbar, std::size_t from) {
  if (nbar == 0.0) return from == 0 ? 1.0 : 0.0;
  double log_term = -nbar + static_cast<double>(from) * std::log(nbar) -
                    std::lgamma(static_cast<double>(from) + 1.0);
  double term = std::exp(log_term);
  double sum = 0.0;
  for (std::size_t n = from; n < from + 10000; ++n) {
    sum += term;
    term *= nbar / static_cast<double>(n + 1);
    if (term < 1e-300 || (n > nbar && term < 1e-17 * sum)) break;
  }
  return sum;
}

}  // namespace

ComplexMatrix annihilation_op(std::size_t dim) {
  require_dim(dim);
  ComplexMatrix a = ComplexMatrix::Zero(idx(dim), idx(dim));
  for (std::size_t n = 1; n < dim; ++n) a(idx(n - 1), idx(n)) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix creation_op(std::size_t dim) { return annihilation_op(dim).adjoint(); }

ComplexMatrix number_op(std::size_t dim) {
  require_dim(dim);
  ComplexMatrix n = ComplexMatrix::Zero(idx(dim), idx(dim));
  for (std::size_t k = 0; k < dim; ++k) n(idx(k), idx(k)) = static_cast<double>(k);
  return n;
}

ComplexMatrix kerr_op(std::size_t dim) {
  require_dim(dim);
  ComplexMatrix k = ComplexMatrix::Zero(idx(dim), idx(dim));
  for (std::size_t n = 0; n < dim; ++n) {
    const double x = static_cast<double>(n);
    k(idx(n), idx(n)) = x * (x - 1.0);
  }
  return k;
}

DensityMatrix fock_density(std::size_t n, std::size_t dim) {
  require_dim(dim);
  if (n >= dim) {
    throw Error(Errc::out_of_range, "Fock state |" + std::to_string(n) +
                                        "> does not fit in dimension " + std::to_string(dim));
  }
  ComplexMatrix rho = ComplexMatrix::Zero(idx(dim), idx(dim));
  rho(idx(n), idx(n)) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix coherent_density(Complex alpha, std::size_t dim, double max_tail) {
  require_dim(dim);
  const double nbar = std::norm(alpha);
  const double tail = poisson_tail(nbar, dim);
  if (tail > max_tail) {
    throw Error(Errc::truncation_insufficient,
                "coherent state with |alpha|^2=" + std::to_string(nbar) + " loses weight " +
                    std::to_string(tail) + " beyond dimension " + std::to_string(dim));
  }
  Eigen::VectorXcd c(idx(dim));
  c(0) = 1.0;
  for (std::size_t n = 1; n < dim; ++n) c(idx(n)) = c(idx(n - 1)) * alpha / std::sqrt(static_cast<double>(n));
  c /= c.norm();
  return DensityMatrix(c * c.adjoint());
}

}  // namespace blockade
