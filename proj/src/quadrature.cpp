#include "ouheat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ouheat {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("node count must be positive");
  }
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussLegendre gl;
  gl.nodes = es.eigenvalues();
  gl.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  return gl;
}

double log_gaussian_integral(double A, double B, double C, int nodes) {
  if (!(A < 0.0)) {
    throw std::domain_error("quadratic form is not negative definite");
  }
  const double sigma = 1.0 / std::sqrt(-2.0 * A);
  const double half = 12.0 * sigma;
  const double peak = C - B * B / (4.0 * A);

  // In coordinates u = y + B/(2A) the exponent is peak + A u^2 exactly.
  const GaussLegendre gl = gauss_legendre(nodes);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = half * gl.nodes(i);
    sum += gl.weights(i) * std::exp(A * u * u);
  }
  return peak + std::log(sum * half);
}

}  // namespace ouheat
