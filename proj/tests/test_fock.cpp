#include <doctest.h>

#include <cmath>

#include "blockade/error.hpp"
#include "blockade/fock.hpp"
#include "blockade/observables.hpp"

#include <Eigen/Eigenvalues>

using namespace blockade;

namespace {

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void check_density(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(m.trace() - 1.0) < 1e-12);
  CHECK(min_eigenvalue(rho) >= -1e-12);
}

}  // namespace

TEST_CASE("annihilation operator entries") {
  const auto a = annihilation_op(3);
  CHECK(a(0, 1) == Complex(1.0));
  CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-15);
  CHECK(a.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0)));

  const auto vac = annihilation_op(1);
  CHECK(vac.rows() == 1);
  CHECK(vac(0, 0) == Complex(0.0));

  CHECK_THROWS_AS(annihilation_op(0), Error);
  try {
    annihilation_op(0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_dimension);
  }
}

TEST_CASE("number and Kerr operators") {
  const auto a = annihilation_op(4);
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix n = number_op(4);
  CHECK((ad * a - n).cwiseAbs().maxCoeff() < 1e-14);
  for (int k = 0; k < 4; ++k) CHECK(n(k, k).real() == k);

  CHECK(number_op(3).diagonal().real() == Eigen::Vector3d(0, 1, 2));
  CHECK(number_op(1)(0, 0) == Complex(0.0));

  const auto k4 = kerr_op(4);
  CHECK(k4.diagonal().real() == Eigen::Vector4d(0, 0, 2, 6));
  CHECK(kerr_op(2).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ad * ad * a * a - k4).cwiseAbs().maxCoeff() < 1e-14);
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  CHECK((n * (n - id) - k4).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("commutator is identity except for the truncation corner") {
  for (std::size_t dim : {2u, 5u, 12u}) {
    const auto a = annihilation_op(dim);
    const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
    const auto d = static_cast<Eigen::Index>(dim);
    const ComplexMatrix block = comm.topLeftCorner(d - 1, d - 1);
    CHECK((block - ComplexMatrix::Identity(d - 1, d - 1)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(comm.row(d - 1).head(d - 1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(comm.col(d - 1).head(d - 1).cwiseAbs().maxCoeff() == 0.0);
    // [a, a^dag] in the last level is -(dim - 1).
    CHECK(comm(d - 1, d - 1).real() == doctest::Approx(-(static_cast<double>(dim) - 1.0)));
  }
}

TEST_CASE("Fock projectors") {
  const auto vac = fock_density(0, 10);
  CHECK(vac(0, 0) == Complex(1.0));
  CHECK(vac.matrix().cwiseAbs().sum() == 1.0);

  const auto two = fock_density(2, 5);
  CHECK(two(2, 2) == Complex(1.0));
  CHECK(two.matrix().trace() == Complex(1.0));
  CHECK((two.matrix() * two.matrix() - two.matrix()).cwiseAbs().maxCoeff() == 0.0);
  check_density(two);

  CHECK_THROWS_AS(fock_density(5, 5), Error);
}

TEST_CASE("coherent states") {
  CHECK((coherent_density(0.0, 6).matrix() - fock_density(0, 6).matrix()).cwiseAbs().maxCoeff() == 0.0);

  const auto rho = coherent_density(0.5, 15);
  check_density(rho);
  const auto q = poisson_distribution(0.25, 14);
  for (std::size_t n = 0; n < 15; ++n) CHECK(std::abs(rho(n, n).real() - q[n]) < 1e-10);
  CHECK(std::abs(mean_photon(rho) - 0.25) < 1e-10);

  for (int order = 2; order <= 5; ++order) {
    CHECK(std::abs(g_n(rho, order).value() - 1.0) < 1e-8);
  }

  const auto phased = coherent_density(Complex(0.2, -0.3), 15);
  check_density(phased);
  CHECK(std::abs(phased(0, 1) - std::exp(-0.13) * Complex(0.2, 0.3)) < 1e-12);

  try {
    coherent_density(2.0, 6);
    FAIL("expected truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::truncation_insufficient);
  }
}
