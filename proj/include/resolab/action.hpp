#ifndef RESOLAB_ACTION_HPP
#define RESOLAB_ACTION_HPP

#include <utility>

#include "resolab/model.hpp"

namespace resolab {

/// Action data at E = 0: value and first three derivatives, plus the energy
/// window over which the turning points are bracketed.
struct ActionData {
  double a0;  // action at 0
  double a1;  // first derivative, > 0
  double a2;  // second derivative
  double a3;  // third derivative
  double e_min, e_max;
};

/// Roots of v1(x) = E near xstar and near 0.  Requires E inside the
/// bracketed window; residual |v1 - E| below 1e-13.
std::pair<double, double> turning_points(const CrossingModel& model, double e);

/// A(E) = int sqrt(E - v1) between the turning points, tanh-sinh quadrature,
/// absolute accuracy 1e-11.
double action(const CrossingModel& model, double e);

/// A'(E) by the direct singular integral int dt / (2 sqrt(E - v1)).
double action_derivative(const CrossingModel& model, double e);

/// Richardson-extrapolated derivatives of action() at E = 0; a1 is
/// cross-validated against action_derivative(0) (ConsistencyError if the two
/// routes disagree beyond 1e-6 relative).
ActionData action_derivatives(const CrossingModel& model);

/// Largest |E| for which both turning points are bracketed (computed once
/// per model by scanning the potential shape).
std::pair<double, double> action_energy_window(const CrossingModel& model);

}  // namespace resolab

#endif
