#pragma once

#include <Eigen/Dense>

#include "ouheat/operator.hpp"

namespace ouheat {

/// A point (x, xi) of phase space for the Hamiltonian
/// H(x, xi) = -theta xi^2 + (a x + b) xi + rho x^2.
struct PhaseState {
  double x;
  double xi;
};

using FlowMatrix = Eigen::Matrix2d;

/// Generator A = [[a, -2 theta], [-2 rho, -a]] of the linear part of the
/// Hamiltonian system. A is trace-free with A^2 = discriminant * I.
FlowMatrix hamiltonian_matrix(const OUOperator& op);

/// exp(s A) in closed form per regime: cosh/sinh for a positive discriminant,
/// I + sA in the critical (nilpotent) case, cos/sin for a negative one.
FlowMatrix transition_matrix(const OUOperator& op, double s);

/// Exact solution at time s of dX/ds = A X + B with B = (b, 0):
/// X(s) = exp(sA) X0 + (f(s) I + g(s) A) B, the integral term in closed form.
PhaseState flow(const OUOperator& op, const PhaseState& state0, double s);

/// Fixed-step classic RK4 integration of the same system; the last partial
/// step lands exactly on s. Independent numerical route used by the oracles.
PhaseState flow_numeric(const OUOperator& op, const PhaseState& state0,
                        double s, double dt = 1e-4);

/// Full symbol H = -theta xi^2 + (a x + b) xi + rho x^2; conserved along flow.
double hamiltonian_value(const OUOperator& op, const PhaseState& state);

}  // namespace ouheat
