#ifndef RESOLAB_COUPLED_SOLVER_HPP
#define RESOLAB_COUPLED_SOLVER_HPP

#include <array>
#include <complex>

#include "resolab/crossing_integrals.hpp"  // Side
#include "resolab/model.hpp"

namespace resolab {

/// One propagated solution of the 2x2 system, reduced to its data at x = 0:
/// values and x-derivatives of both channels, with the accumulated
/// rescaling factor kept separately in log_scale.
struct BasisSolution {
  Complex u1, p1, u2, p2;  // p = du/dx
  double log_scale = 0.0;
};

struct SolutionBasis {
  BasisSolution a, b;
  Side side;

  /// Ratio of the two singular values of the 2x4 matrix of components;
  /// linear independence requires this below ~1e8.
  double condition() const;
};

/// Wronskian of the four basis solutions at x = 0.  The meaningful value is
/// w * exp(log_scale); only zeros and ratios at nearby E carry information.
struct WronskianValue {
  Complex w;
  double log_scale;
  Complex e;
  double h;
};

struct SolverOptions {
  double rtol = 1e-11;
  double atol = 1e-14;
  double reorth_ds = 0.0;  // 0 means "use h"
  double min_step = 1e-12;
};

class CoupledSolver {
public:
  CoupledSolver(const CrossingModel& model, const DistortionContour& contour,
                SolverOptions opts = {});

  /// Propagate the two decaying WKB channel vectors from the far end of the
  /// given side to x = 0, with periodic pairwise re-orthonormalization.
  SolutionBasis propagate_basis(Complex e, double h, Side side) const;

  /// Determinant of the 4x4 matrix of values and x-derivatives of both
  /// bases at the origin.
  WronskianValue wronskian(Complex e, double h) const;

  long rhs_evaluations() const { return rhs_evals_; }

private:
  const CrossingModel& model_;
  DistortionContour contour_;
  SolverOptions opts_;
  mutable long rhs_evals_ = 0;
};

}  // namespace resolab

#endif
