#include "ouheat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ouheat/special.hpp"

namespace ouheat {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("t must be positive and finite");
  }
}

KernelCoefficients hyperbolic_coefficients(const OUOperator& op,
                                           const Regime& r, double t,
                                           KernelNormalization norm) {
  const double th = op.theta, a = op.a, b = op.b;
  const double l = r.lambda0, z = l * t;
  const double ct = coth(z);
  const double lsh = log_sinh(z);
  const double inv_sinh = std::exp(-lsh);
  const double ab = a * b;

  KernelCoefficients c;
  c.alpha = a / (4.0 * th) - l / (4.0 * th) * ct;
  c.beta = l / (2.0 * th) * inv_sinh;
  if (norm == KernelNormalization::Symmetric) {
    c.gamma = c.alpha;
    c.mu = -ab / (2.0 * th * l) * ct + b / (2.0 * th);
    c.nu = ab / (2.0 * th * l) * inv_sinh + b / (2.0 * th);
    c.log_phi = 0.5 * (std::log(l / (kFourPi * th)) - lsh) +
                (0.5 * a - op.rho * b * b / r.discriminant) * t -
                ab * ab / (4.0 * th * l * l * l) * ct;
  } else {
    const double tn = std::tanh(0.5 * z);
    c.gamma = c.alpha - a / (2.0 * th);
    c.mu = b / (2.0 * th) - ab / (2.0 * th * l) * tn;
    c.nu = c.mu - b / th;
    c.log_phi = 0.5 * (std::log(l / (kFourPi * th)) - lsh) +
                (0.5 * a - b * b / (4.0 * th) + ab * ab / (4.0 * th * l * l)) * t -
                ab * ab / (2.0 * th * l * l * l) * tn;
  }
  return c;
}

KernelCoefficients critical_coefficients(const OUOperator& op, double t,
                                         KernelNormalization norm) {
  const double th = op.theta, a = op.a, b = op.b;
  const double ab = a * b;

  KernelCoefficients c;
  c.alpha = a / (4.0 * th) - 1.0 / (4.0 * th * t);
  c.beta = 1.0 / (2.0 * th * t);
  c.mu = -ab / (4.0 * th) * t + b / (2.0 * th);
  c.log_phi = -0.5 * std::log(kFourPi * th * t) +
              (0.5 * a - b * b / (4.0 * th)) * t +
              ab * ab / (48.0 * th) * t * t * t;
  if (norm == KernelNormalization::Symmetric) {
    c.gamma = c.alpha;
    c.nu = c.mu;
  } else {
    c.gamma = c.alpha - a / (2.0 * th);
    c.nu = c.mu - b / th;
  }
  return c;
}

KernelCoefficients oscillatory_coefficients(const OUOperator& op,
                                            const Regime& r, double t,
                                            KernelNormalization norm) {
  const double th = op.theta, a = op.a, b = op.b;
  const double l = r.lambda0, z = l * t;
  const double sn = std::sin(z);
  const double ct = std::cos(z) / sn;
  const double ab = a * b;

  KernelCoefficients c;
  c.alpha = a / (4.0 * th) - l / (4.0 * th) * ct;
  c.beta = l / (2.0 * th * sn);
  if (norm == KernelNormalization::Symmetric) {
    c.gamma = c.alpha;
    c.mu = ab / (2.0 * th * l) * ct + b / (2.0 * th);
    c.nu = -ab / (2.0 * th * l * sn) + b / (2.0 * th);
    c.log_phi = 0.5 * std::log(l / (kFourPi * th * std::abs(sn))) +
                (0.5 * a - op.rho * b * b / r.discriminant) * t -
                ab * ab / (4.0 * th * l * l * l) * ct;
  } else {
    const double tn = one_minus_cos(z) / sn;  // tan(z/2), no pole at even k pi
    c.gamma = c.alpha - a / (2.0 * th);
    c.mu = b / (2.0 * th) - ab / (2.0 * th * l) * tn;
    c.nu = c.mu - b / th;
    c.log_phi = 0.5 * std::log(l / (kFourPi * th * std::abs(sn))) +
                (0.5 * a - b * b / (4.0 * th) - ab * ab / (4.0 * th * l * l)) * t +
                ab * ab / (2.0 * th * l * l * l) * tn;
  }
  return c;
}

}  // namespace

SingularTimeError::SingularTimeError(double t, int k, double t_singular,
                                     double window, const std::string& message)
    : std::domain_error(message),
      t_(t),
      k_(k),
      t_singular_(t_singular),
      window_(window) {}

KernelCoefficients coefficients(const OUOperator& op, double t,
                                KernelNormalization norm) {
  check_time(t);
  const Regime r = classify(op);
  switch (r.kind) {
    case RegimeKind::Hyperbolic:
      return hyperbolic_coefficients(op, r, t, norm);
    case RegimeKind::Critical:
      return critical_coefficients(op, t, norm);
    case RegimeKind::Oscillatory: {
      const double z = r.lambda0 * t;
      const double window = std::max(1e-12, 1e-12 * z);
      const int k = static_cast<int>(
          std::min<long long>(std::llround(z / std::numbers::pi),
                              std::numeric_limits<int>::max()));
      if (k >= 1 && std::abs(std::sin(z)) < window) {
        const double t_singular = k * std::numbers::pi / r.lambda0;
        std::ostringstream msg;
        msg << "t = " << t << " lies in the singular window of t_" << k
            << " = " << t_singular;
        throw SingularTimeError(t, k, t_singular, window, msg.str());
      }
      return oscillatory_coefficients(op, r, t, norm);
    }
  }
  throw std::logic_error("unreachable");
}

double log_eval(const KernelCoefficients& c, double x, double x0) {
  return c.log_phi + c.alpha * x * x + c.beta * x * x0 + c.gamma * x0 * x0 +
         c.mu * x + c.nu * x0;
}

double log_kernel(const OUOperator& op, double t, double x, double x0,
                  KernelNormalization norm) {
  return log_eval(coefficients(op, t, norm), x, x0);
}

double log_kernel_nd(const ProductOperator& pop, double t,
                     const Eigen::VectorXd& x, const Eigen::VectorXd& x0,
                     KernelNormalization norm) {
  const auto n = static_cast<Eigen::Index>(pop.factors.size());
  if (x.size() != n || x0.size() != n) {
    throw std::invalid_argument("x and x0 must match the factor count");
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    try {
      sum += log_kernel(pop.factors[static_cast<std::size_t>(j)], t, x(j),
                        x0(j), norm);
    } catch (const SingularTimeError& e) {
      std::ostringstream msg;
      msg << "factor " << j << ": " << e.what();
      throw SingularTimeError(e.t(), e.k(), e.t_singular(), e.window(),
                              msg.str());
    }
  }
  return sum;
}

std::vector<double> singular_times(const OUOperator& op, double t_max) {
  if (!(t_max > 0.0)) {
    throw std::invalid_argument("t_max must be positive");
  }
  std::vector<double> out;
  const Regime r = classify(op);
  if (r.kind != RegimeKind::Oscillatory) {
    return out;
  }
  for (int k = 1;; ++k) {
    const double t = k * std::numbers::pi / r.lambda0;
    if (t > t_max) break;
    out.push_back(t);
  }
  return out;
}

}  // namespace ouheat
