#include "ouheat/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "ouheat/special.hpp"

namespace ouheat {

FlowMatrix hamiltonian_matrix(const OUOperator& op) {
  FlowMatrix A;
  A << op.a, -2.0 * op.theta, -2.0 * op.rho, -op.a;
  return A;
}

FlowMatrix transition_matrix(const OUOperator& op, double s) {
  if (!std::isfinite(s)) {
    throw std::invalid_argument("s must be finite");
  }
  const Regime r = classify(op);
  const FlowMatrix A = hamiltonian_matrix(op);
  switch (r.kind) {
    case RegimeKind::Critical:
      return FlowMatrix::Identity() + s * A;
    case RegimeKind::Hyperbolic: {
      const double z = r.lambda0 * s;
      return std::cosh(z) * FlowMatrix::Identity() +
             (std::sinh(z) / r.lambda0) * A;
    }
    case RegimeKind::Oscillatory: {
      const double z = r.lambda0 * s;
      return std::cos(z) * FlowMatrix::Identity() +
             (std::sin(z) / r.lambda0) * A;
    }
  }
  throw std::logic_error("unreachable");
}

PhaseState flow(const OUOperator& op, const PhaseState& state0, double s) {
  const Regime r = classify(op);
  const FlowMatrix E = transition_matrix(op, s);
  // f(s) I + g(s) A = integral of exp(vA) dv over [0, s].
  double f = 0.0, g = 0.0;
  switch (r.kind) {
    case RegimeKind::Critical:
      f = s;
      g = 0.5 * s * s;
      break;
    case RegimeKind::Hyperbolic: {
      const double z = r.lambda0 * s;
      f = std::sinh(z) / r.lambda0;
      g = cosh_minus_one(z) / r.discriminant;
      break;
    }
    case RegimeKind::Oscillatory: {
      const double z = r.lambda0 * s;
      f = std::sin(z) / r.lambda0;
      g = -one_minus_cos(z) / r.discriminant;
      break;
    }
  }
  const Eigen::Vector2d X0(state0.x, state0.xi);
  const Eigen::Vector2d drift(op.b * (f + op.a * g), -2.0 * op.rho * op.b * g);
  const Eigen::Vector2d X = E * X0 + drift;
  return PhaseState{X(0), X(1)};
}

PhaseState flow_numeric(const OUOperator& op, const PhaseState& state0,
                        double s, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  const FlowMatrix A = hamiltonian_matrix(op);
  const Eigen::Vector2d B(op.b, 0.0);
  const auto deriv = [&](const Eigen::Vector2d& X) -> Eigen::Vector2d {
    return A * X + B;
  };
  const auto rk4_step = [&](Eigen::Vector2d& X, double h) {
    const Eigen::Vector2d k1 = deriv(X);
    const Eigen::Vector2d k2 = deriv(X + 0.5 * h * k1);
    const Eigen::Vector2d k3 = deriv(X + 0.5 * h * k2);
    const Eigen::Vector2d k4 = deriv(X + h * k3);
    X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  Eigen::Vector2d X(state0.x, state0.xi);
  const double h = std::copysign(dt, s);
  const auto n = static_cast<long long>(std::floor(std::abs(s) / dt));
  double covered = 0.0;
  for (long long i = 0; i < n; ++i) {
    rk4_step(X, h);
    covered += h;
  }
  const double rest = s - covered;
  if (rest != 0.0) {
    rk4_step(X, rest);
  }
  return PhaseState{X(0), X(1)};
}

double hamiltonian_value(const OUOperator& op, const PhaseState& state) {
  const double x = state.x, xi = state.xi;
  return -op.theta * xi * xi + (op.a * x + op.b) * xi + op.rho * x * x;
}

}  // namespace ouheat
