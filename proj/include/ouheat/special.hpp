#pragma once

#include <cmath>
#include <numbers>

namespace ouheat {

/// log(sinh(z)) for z > 0 without overflow; usable up to z ~ 1e308.
inline double log_sinh(double z) {
  if (z < 1e-3) {
    const double z2 = z * z;
    return std::log(z) + std::log1p(z2 / 6.0 * (1.0 + z2 / 20.0));
  }
  return z + std::log1p(-std::exp(-2.0 * z)) - std::numbers::ln2;
}

/// coth(z) for z > 0, accurate for both tiny and large arguments.
inline double coth(double z) {
  return 1.0 + 2.0 / std::expm1(2.0 * z);
}

/// 1 - cos(z) without cancellation.
inline double one_minus_cos(double z) {
  const double s = std::sin(0.5 * z);
  return 2.0 * s * s;
}

/// cosh(z) - 1 without cancellation.
inline double cosh_minus_one(double z) {
  const double s = std::sinh(0.5 * z);
  return 2.0 * s * s;
}

/// sinh(lambda*u)/sinh(lambda) for lambda > 0, u in [0,1], overflow-free.
/// Exact 0 and 1 at the endpoints.
inline double sinh_ratio(double lambda, double u) {
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  return std::exp(log_sinh(lambda * u) - log_sinh(lambda));
}

}  // namespace ouheat
