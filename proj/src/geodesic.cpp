#include "ouheat/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ouheat/special.hpp"

namespace ouheat {

namespace {

constexpr double kResonanceTol = 1e-9;
constexpr double kEndpointTol = 1e-9;

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("s must lie in [0,1]");
  }
}

}  // namespace

GeodesicResult geodesic(const OUOperator& op, double x0, double x1) {
  if (!std::isfinite(x0) || !std::isfinite(x1)) {
    throw std::invalid_argument("endpoints must be finite");
  }
  const Regime r = classify(op);
  const double ab = op.a * op.b;
  switch (r.kind) {
    case RegimeKind::Hyperbolic:
      return GeodesicPath{r, x0, x1, -ab / r.discriminant};
    case RegimeKind::Critical:
      return GeodesicPath{r, x0, x1, 0.5 * ab};
    case RegimeKind::Oscillatory: {
      const double pi = std::numbers::pi;
      const int k = static_cast<int>(
          std::min<long long>(std::llround(r.lambda0 / pi),
                              std::numeric_limits<int>::max()));
      const bool resonant =
          k >= 1 && std::abs(r.lambda0 - k * pi) <=
                        kResonanceTol * std::max(r.lambda0, 1.0);
      if (!resonant) {
        return GeodesicPath{r, x0, x1, -ab / r.discriminant};
      }
      const double shift = ab / (k * pi * k * pi);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const double forced = shift + sign * (x0 - shift);
      if (std::abs(x1 - forced) <= kEndpointTol * (1.0 + std::abs(x1))) {
        return SingularFamily{k, x0, op.a, shift};
      }
      return NoSolution{k, forced};
    }
  }
  throw std::logic_error("unreachable");
}

double geodesic_eval(const GeodesicPath& path, double s) {
  check_s(s);
  const double x0 = path.x0, x1 = path.x1;
  switch (path.regime.kind) {
    case RegimeKind::Hyperbolic: {
      const double m = path.shift, l = path.regime.lambda0;
      return m + (x0 - m) * sinh_ratio(l, 1.0 - s) +
             (x1 - m) * sinh_ratio(l, s);
    }
    case RegimeKind::Critical: {
      const double half_ab = path.shift;
      return half_ab * s * s + (x1 - x0 - half_ab) * s + x0;
    }
    case RegimeKind::Oscillatory: {
      const double m = path.shift, l = path.regime.lambda0;
      const double denom = std::sin(l);
      return m + (x0 - m) * std::sin(l * (1.0 - s)) / denom +
             (x1 - m) * std::sin(l * s) / denom;
    }
  }
  throw std::logic_error("unreachable");
}

double family_eval(const SingularFamily& family, double c2, double s) {
  check_s(s);
  const double l = family.k * std::numbers::pi;
  const double c = std::cos(l * s), sn = std::sin(l * s);
  return family.shift + (family.x0 - family.shift) * (c + family.a / l * sn) -
         c2 * sn;
}

}  // namespace ouheat
