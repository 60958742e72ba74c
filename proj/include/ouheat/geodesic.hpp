#pragma once

#include <variant>

#include "ouheat/operator.hpp"

namespace ouheat {

/// A unique geodesic x(s), s in [0,1], with x(0)=x0, x(1)=x1. The path
/// satisfies x'' = discriminant * x + a b.
///
/// `shift` holds the regime-specific constant: the stationary point
/// -a b / discriminant away from the critical case, and the parabola
/// coefficient a b / 2 in the critical case.
struct GeodesicPath {
  Regime regime;
  double x0;
  double x1;
  double shift;
};

/// The one-parameter family of geodesics at an oscillatory resonance
/// lambda0 = k pi. Evaluation supplies the free coefficient c2; endpoints are
/// independent of it: x(0) = x0, x(1) = shift + (-1)^k (x0 - shift) with
/// shift = a b / (k pi)^2.
struct SingularFamily {
  int k;
  double x0;
  double a;
  double shift;
};

/// No geodesic exists: at resonance the boundary problem is solvable only for
/// one endpoint value, recorded here.
struct NoSolution {
  int k;
  double required_endpoint;
};

using GeodesicResult = std::variant<GeodesicPath, SingularFamily, NoSolution>;

/// Complete classification of the two-point boundary problem. Degeneracy
/// (Family / NoSolution) is data, not failure; it occurs only when lambda0 is
/// within 1e-9 * max(lambda0, 1) of a positive multiple of pi. The endpoint
/// match for Family uses tolerance 1e-9 * (1 + |x1|).
GeodesicResult geodesic(const OUOperator& op, double x0, double x1);

/// x(s) of a unique path; throws std::domain_error for s outside [0,1].
double geodesic_eval(const GeodesicPath& path, double s);

/// x(s) of a family member with free coefficient c2; s in [0,1].
double family_eval(const SingularFamily& family, double c2, double s);

}  // namespace ouheat
