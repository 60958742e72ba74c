#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ouheat {

/// Parameters of the 1-d operator L = -theta d^2/dx^2 + (a x + b) d/dx + rho x^2.
///
/// Construction validates theta > 0, rho != 0 and finiteness of every field;
/// violations throw std::invalid_argument naming the offending field.
struct OUOperator {
  double theta;
  double a;
  double b;
  double rho;

  OUOperator(double theta, double a, double b, double rho);
};

enum class RegimeKind { Hyperbolic, Critical, Oscillatory };

/// Sign classification of the discriminant a^2 + 4 rho theta, together with
/// lambda0 = sqrt(|discriminant|) (0 in the critical case) so downstream code
/// never recomputes square roots inconsistently.
struct Regime {
  RegimeKind kind;
  double lambda0;
  double discriminant;
};

/// A separable operator in n spatial variables: one 1-d factor per coordinate.
struct ProductOperator {
  std::vector<OUOperator> factors;

  explicit ProductOperator(std::vector<OUOperator> f);
};

using AnyOperator = std::variant<OUOperator, ProductOperator>;

/// a^2 + 4 rho theta, exactly as floating arithmetic gives it.
double discriminant(const OUOperator& op);

/// Regime classification. Critical iff |discriminant| <= eps_rel * max(a^2,
/// 4|rho theta|, 1); pass eps_rel = 0 for exact sign classification.
///
/// The nonzero default matters: near the critical surface the hyperbolic and
/// oscillatory closed forms lose all accuracy (several coefficients carry a
/// 1/discriminant factor), while the critical formulas are their limit.
Regime classify(const OUOperator& op, double eps_rel = 1e-10);

/// Parse the JSON operator format: {"theta":..,"a":..,"b":..,"rho":..} or
/// {"factors":[<operator>, ...]}. Throws std::invalid_argument on malformed
/// syntax or invariant violations, naming the offending field.
AnyOperator parse_operator(const std::string& text);

/// Canonical JSON text of an operator (used in CLI output and report context).
std::string to_json_string(const OUOperator& op);
std::string to_json_string(const ProductOperator& pop);

const char* regime_name(RegimeKind kind);

}  // namespace ouheat
