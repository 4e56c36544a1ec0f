#ifndef RESOLAB_FINDER_HPP
#define RESOLAB_FINDER_HPP

#include <string>
#include <vector>

#include "resolab/asymptotics.hpp"
#include "resolab/coupled_solver.hpp"

namespace resolab {

/// Search box D_h(c0) in rescaled coordinates:
/// rho in [-c0, c0] - i [0, c0 h^{1/3}].
struct SearchBox {
  double c0;
  double h;

  double rho_im_min() const { return -c0 * h_pow_13(h); }
};

struct SeedIssue {
  int k;
  std::string what;  // "no-convergence" | "out-of-box"
  std::complex<double> last_rho;
};

struct FinderResult {
  std::vector<Resonance> resonances;  // provenance numeric, ordered by k
  std::vector<SeedIssue> issues;
  long wronskian_evals = 0;
};

struct FinderOptions {
  SolverOptions solver;
  double muller_tol = 1e-12;  // on |delta rho|
  int muller_max_iter = 50;
  int max_winding_depth = 26;
};

class ResonanceFinder {
public:
  ResonanceFinder(const CrossingModel& model, const DistortionContour& contour,
                  const ActionData& actions, FinderOptions opts = {});

  /// One converged Wronskian zero per k in the window, seeded from the
  /// asymptotic predictions (thm2 when r0 == 0, else thm1) and refined by
  /// Muller iteration in rho; duplicates within a quarter level spacing
  /// are merged.
  FinderResult find_resonances(double h, double c0) const;

  /// Winding number of the Wronskian around the search box, side edges
  /// placed at the predicted gaps between adjacent levels so the count
  /// matches the k window.  Throws InconclusiveCountError when a zero sits
  /// too close to the contour to certify.
  int count_zeros(double h, double c0) const;

  /// Global search used by --seedless: recursive box subdivision by winding
  /// count, Muller refinement once a box holds a single zero.
  FinderResult find_resonances_seedless(double h, double c0) const;

  /// Muller refinement of an arbitrary starting point, in rho coordinates.
  /// spread > 0 overrides the initial stencil width.
  Resonance refine(std::complex<double> rho_seed, double h, int k, double spread = 0.0) const;

private:
  const CrossingModel& model_;
  DistortionContour contour_;
  const ActionData& actions_;
  SlopePair slopes_;
  FinderOptions opts_;
};

}  // namespace resolab

#endif
