#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ouheat/kernel.hpp"
#include "ouheat/operator.hpp"

namespace ouheat {

/// Outcome of one oracle check: a measured error against a tolerance, plus
/// enough context to reproduce the check.
struct VerificationReport {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> context;
};

VerificationReport make_report(
    std::string name, double measured, double tolerance,
    std::vector<std::pair<std::string, std::string>> context = {});

/// Monte Carlo estimate with its standard error (sample sd / sqrt(paths)).
struct MCEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
  double dt = 0.0;
};

/// Test functions paired with the kernel: the constant 1, or the unit-width
/// Gaussian bump exp(-(y - center)^2 / 2) centered at the reference point.
enum class Probe { Constant1, GaussianBump };

/// Relative residual of dP/dt - theta Pxx + (a x + b) Px + rho x^2 P using
/// 5-point central differences in x and 2-point central in t, in units of
/// max(|dP/dt|, P/t). Both normalizations solve the PDE; default checks the
/// symmetric transcription.
VerificationReport pde_residual(
    const OUOperator& op, double t, double x, double x0, double h_t,
    double h_x, KernelNormalization norm = KernelNormalization::Symmetric);

/// Central finite-difference check of all six coefficient ODEs at time t.
/// Each report's measured value is |fd - rhs| / max(|fd|, |rhs|, 1).
std::array<VerificationReport, 6> ode_residuals(
    const OUOperator& op, double t, double h,
    KernelNormalization norm = KernelNormalization::Symmetric);

/// Semigroup check: Gauss-Legendre quadrature of the product of two
/// delta-normalized kernels against the kernel at t1 + t2; the integrand is
/// exp(quadratic in y), centered analytically. Throws std::domain_error when
/// the quadratic form is not negative definite (a singular-time straddle).
VerificationReport chapman_kolmogorov_error(const OUOperator& op, double t1,
                                            double t2, double x, double x0,
                                            int nodes);

/// |integral of P(t; x, x0) phi(x) dx - phi(x0)| for the delta-normalized
/// kernel; decays linearly in t as t -> 0.
VerificationReport delta_limit_error(const OUOperator& op, double t, double x0,
                                     Probe probe);

/// Euler-Maruyama simulation of dX = -(a X + b) ds + sqrt(2 theta) dW from
/// x_start, with multiplicative weight exp(-rho * left-Riemann integral of
/// X^2); returns the weighted mean of phi(X(t)). Paths are seeded
/// individually from (seed, path index), so the result is independent of any
/// worker partitioning and bit-reproducible for a fixed seed.
MCEstimate feynman_kac_estimate(const OUOperator& op, double t, double x_start,
                                Probe probe, std::uint64_t paths, double dt,
                                std::uint64_t seed);

/// Closed-form value the Monte Carlo estimates: quadrature of the
/// delta-normalized kernel from x_start against the probe.
double kernel_expectation(const OUOperator& op, double t, double x_start,
                          Probe probe);

/// Boundary-value oracle: secant iteration on xi(0) so that RK4 integration
/// lands on x1 at s = 1, then the max deviation from the closed-form path
/// over a uniform grid. Requires a Unique geodesic; throws std::domain_error
/// if the secant fails to converge in 100 iterations (near-resonance).
VerificationReport geodesic_shooting_error(const OUOperator& op, double x0,
                                           double x1, int grid);

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::uint64_t paths = 20000;
  double dt = 1e-3;
};

/// Run a named suite ("pde", "ode", "chapman", "delta", "mc", "shooting",
/// or "all") of seeded randomized checks against one operator.
std::vector<VerificationReport> run_suite(const OUOperator& op,
                                          const std::string& suite,
                                          const SuiteOptions& options);

}  // namespace ouheat
