#include "blockade/expm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace blockade {

namespace {

using Matrix = Eigen::MatrixXcd;

double norm1(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade coefficients b_0..b_m; exp(a) ~ (V - U)^{-1} (V + U).
constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                       25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                        30270240.0,    2162160.0,    110880.0,     3960.0,
                                        90.0,          1.0};
constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norm for which each degree meets double precision without scaling.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
Matrix pade_low(const Matrix& a, const std::array<double, N>& b) {
  // Degrees 3..9: accumulate even powers once.
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix power = id;
  Matrix u_inner = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  for (std::size_t k = 0; k + 1 < N; k += 2) {
    v += b[k] * power;
    u_inner += b[k + 1] * power;
    power = power * a2;
  }
  const Matrix u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

Matrix pade13(const Matrix& a) {
  const auto& b = kPade13;
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix expm(const Matrix& a) {
  const double norm = norm1(a);
  if (norm <= kTheta3) return pade_low(a, kPade3);
  if (norm <= kTheta5) return pade_low(a, kPade5);
  if (norm <= kTheta7) return pade_low(a, kPade7);
  if (norm <= kTheta9) return pade_low(a, kPade9);

  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  Matrix r = pade13(a / std::ldexp(1.0, squarings));
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

namespace {

// 1-norm of a - mu I, without materializing the shift.
template <typename M>
double shifted_norm1(const M& a, std::complex<double> mu) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(a.cols());
  Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(a.cols());
  if constexpr (std::is_base_of_v<Eigen::SparseMatrixBase<M>, M>) {
    for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
      for (typename M::InnerIterator it(a, j); it; ++it) {
        col(it.col()) += std::abs(it.value());
        if (it.row() == it.col()) diag(it.col()) = it.value();
      }
    }
  } else {
    col = a.cwiseAbs().colwise().sum().transpose();
    diag = a.diagonal();
  }
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    worst = std::max(worst, col(j) - std::abs(diag(j)) + std::abs(diag(j) - mu));
  }
  return worst;
}

template <typename M>
Eigen::VectorXcd taylor_action(const M& a, const Eigen::VectorXcd& v, double t) {
  const auto n = a.rows();
  // Shift by the mean diagonal to shrink the norm; exp(mu) is restored per step.
  std::complex<double> mu = 0.0;
  if constexpr (std::is_base_of_v<Eigen::SparseMatrixBase<M>, M>) {
    for (Eigen::Index k = 0; k < n; ++k) mu += a.coeff(k, k);
  } else {
    mu = a.trace();
  }
  if (n > 0) mu /= static_cast<double>(n);

  const double norm = t * shifted_norm1(a, mu);
  const int steps = std::max(1, static_cast<int>(std::ceil(norm)));
  const double h = t / steps;
  const std::complex<double> step_scale = std::exp(mu * h);

  Eigen::VectorXcd f = v;
  Eigen::VectorXcd term(n);
  Eigen::VectorXcd sum(n);
  for (int s = 0; s < steps; ++s) {
    term = f;
    sum = f;
    double prev = term.cwiseAbs().maxCoeff();
    for (int k = 1; k <= 80; ++k) {
      term = (h / k) * (a * term - mu * term);
      sum += term;
      const double cur = term.cwiseAbs().maxCoeff();
      const double ref = sum.cwiseAbs().maxCoeff();
      if (cur + prev <= 1e-17 * ref) break;
      prev = cur;
    }
    f = step_scale * sum;
  }
  return f;
}

}  // namespace

Eigen::VectorXcd expm_multiply(const Matrix& a, const Eigen::VectorXcd& v, double t) {
  return taylor_action(a, v, t);
}

Eigen::VectorXcd expm_multiply(const SparseMatrix& a, const Eigen::VectorXcd& v, double t) {
  return taylor_action(a, v, t);
}

}  // namespace blockade
