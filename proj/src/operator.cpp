#include "ouheat/operator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace ouheat {

namespace {

void validate(double theta, double a, double b, double rho) {
  if (!std::isfinite(theta) || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(rho)) {
    throw std::invalid_argument("operator fields must be finite");
  }
  if (!(theta > 0.0)) {
    throw std::invalid_argument("theta must be positive");
  }
  if (rho == 0.0) {
    throw std::invalid_argument("rho must be nonzero");
  }
}

double require_number(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) {
    throw std::invalid_argument(std::string("missing field: ") + field);
  }
  const auto& v = j.at(field);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string(field) + " must be a number");
  }
  return v.get<double>();
}

OUOperator operator_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("operator must be a JSON object");
  }
  return OUOperator(require_number(j, "theta"), require_number(j, "a"),
                    require_number(j, "b"), require_number(j, "rho"));
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

OUOperator::OUOperator(double theta_, double a_, double b_, double rho_)
    : theta(theta_), a(a_), b(b_), rho(rho_) {
  validate(theta, a, b, rho);
}

ProductOperator::ProductOperator(std::vector<OUOperator> f)
    : factors(std::move(f)) {
  if (factors.empty()) {
    throw std::invalid_argument("factors must be non-empty");
  }
}

double discriminant(const OUOperator& op) {
  return op.a * op.a + 4.0 * op.rho * op.theta;
}

Regime classify(const OUOperator& op, double eps_rel) {
  if (!(eps_rel >= 0.0)) {
    throw std::invalid_argument("eps_rel must be nonnegative");
  }
  const double d = discriminant(op);
  const double scale =
      std::max({op.a * op.a, 4.0 * std::abs(op.rho * op.theta), 1.0});
  if (std::abs(d) <= eps_rel * scale) {
    return Regime{RegimeKind::Critical, 0.0, d};
  }
  if (d > 0.0) {
    return Regime{RegimeKind::Hyperbolic, std::sqrt(d), d};
  }
  return Regime{RegimeKind::Oscillatory, std::sqrt(-d), d};
}

AnyOperator parse_operator(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed operator JSON: ") +
                                e.what());
  }
  if (j.is_object() && j.contains("factors")) {
    const auto& arr = j.at("factors");
    if (!arr.is_array() || arr.empty()) {
      throw std::invalid_argument("factors must be a non-empty array");
    }
    std::vector<OUOperator> factors;
    factors.reserve(arr.size());
    for (const auto& f : arr) {
      factors.push_back(operator_from_json(f));
    }
    return ProductOperator(std::move(factors));
  }
  return operator_from_json(j);
}

std::string to_json_string(const OUOperator& op) {
  std::ostringstream os;
  os << "{\"theta\":" << format_double(op.theta) << ",\"a\":"
     << format_double(op.a) << ",\"b\":" << format_double(op.b)
     << ",\"rho\":" << format_double(op.rho) << "}";
  return os.str();
}

std::string to_json_string(const ProductOperator& pop) {
  std::ostringstream os;
  os << "{\"factors\":[";
  for (std::size_t i = 0; i < pop.factors.size(); ++i) {
    if (i) os << ",";
    os << to_json_string(pop.factors[i]);
  }
  os << "]}";
  return os.str();
}

const char* regime_name(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::Hyperbolic: return "hyperbolic";
    case RegimeKind::Critical: return "critical";
    case RegimeKind::Oscillatory: return "oscillatory";
  }
  return "unknown";
}

}  // namespace ouheat
