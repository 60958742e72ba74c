#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ouheat/operator.hpp"

namespace ouheat {

/// The six time-dependent coefficients of the kernel ansatz
/// P(t; x, x0) = exp(log_phi + alpha x^2 + beta x x0 + gamma x0^2
///                   + mu x + nu x0).
/// They satisfy the coupled ODE system
///   alpha' = 4 theta alpha^2 - 2 a alpha - rho
///   beta'  = 4 theta alpha beta - a beta
///   gamma' = theta beta^2
///   mu'    = 4 theta alpha mu - a mu - 2 b alpha
///   nu'    = 2 theta beta mu - b beta
///   (log phi)' = theta mu^2 + 2 theta alpha - b mu.
struct KernelCoefficients {
  double alpha;
  double beta;
  double gamma;
  double mu;
  double nu;
  double log_phi;
};

/// The ODE system fixes the coefficients only up to integration constants;
/// two normalizations of independent interest are exposed.
///
/// Symmetric: alpha == gamma and, for b = 0, the kernel is symmetric in
/// (x, x0). Away from the t->0 diagonal limit this is the kernel taken with
/// respect to the weight exp(-(a/2theta)x0^2 - (b/theta)x0) in its second
/// argument (exactly so when a b = 0, the weight being the stationary density
/// of the drift). It does not tend to a Dirac delta in Lebesgue pairing.
///
/// Delta: constants fixed by the initial condition P(0+; ., x0) = delta_x0.
/// This is the Lebesgue heat kernel of the semigroup: it satisfies
/// Chapman-Kolmogorov under ordinary dy-integration and equals the
/// Feynman-Kac expectation. Both normalizations solve the same ODE system
/// and the same PDE in (t, x); they coincide at a = b = 0.
enum class KernelNormalization { Symmetric, Delta };

/// Thrown in the oscillatory regime when t falls inside the exclusion window
/// of a zero of sin(lambda0 t), where the closed forms blow up.
class SingularTimeError : public std::domain_error {
 public:
  SingularTimeError(double t, int k, double t_singular, double window,
                    const std::string& message);

  double t() const { return t_; }
  int k() const { return k_; }
  double t_singular() const { return t_singular_; }
  double window() const { return window_; }

 private:
  double t_;
  int k_;
  double t_singular_;
  double window_;
};

/// Coefficient values at time t > 0. Oscillatory operators reject t with
/// |sin(lambda0 t)| < max(1e-12, 1e-12 * lambda0 t); a hard error is more
/// testable than a signed infinity. In sign-changing windows of
/// sin(lambda0 t) the log_phi term uses log|sin|, i.e. the magnitude of the
/// kernel; the coefficient ODEs hold in every regular window either way.
KernelCoefficients coefficients(
    const OUOperator& op, double t,
    KernelNormalization norm = KernelNormalization::Symmetric);

/// log_phi + alpha x^2 + beta x x0 + gamma x0^2 + mu x + nu x0 for given
/// coefficient values.
double log_eval(const KernelCoefficients& c, double x, double x0);

/// log P(t; x, x0), evaluated entirely in log-space. The kernel solves
/// dP/dt = theta Pxx - (a x + b) Px - rho x^2 P in (t, x).
double log_kernel(const OUOperator& op, double t, double x, double x0,
                  KernelNormalization norm = KernelNormalization::Symmetric);

/// Sum of per-factor 1-d logs over matching coordinates (the log of the
/// product kernel of a separable operator). Factor errors are rethrown with
/// the factor index in the message.
double log_kernel_nd(const ProductOperator& pop, double t,
                     const Eigen::VectorXd& x, const Eigen::VectorXd& x0,
                     KernelNormalization norm = KernelNormalization::Symmetric);

/// Increasing list {k pi / lambda0 : k >= 1} up to t_max; empty unless the
/// operator is oscillatory.
std::vector<double> singular_times(const OUOperator& op, double t_max);

}  // namespace ouheat
