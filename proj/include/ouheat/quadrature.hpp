#pragma once

#include <Eigen/Dense>

namespace ouheat {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Golub-Welsch: eigendecomposition of the symmetric tridiagonal Jacobi
/// matrix; nodes are its eigenvalues, weights 2 * (first eigenvector row)^2.
GaussLegendre gauss_legendre(int n);

/// log of the integral over the real line of exp(A y^2 + B y + C) with A < 0,
/// by Gauss-Legendre on the interval centered at the maximum -B/(2A) with
/// half-width 12 standard deviations (sigma = 1/sqrt(-2A)) of the quadratic
/// form. Centering analytically removes truncation error as a tolerance
/// confounder. Throws std::domain_error when A >= 0.
double log_gaussian_integral(double A, double B, double C, int nodes);

}  // namespace ouheat
