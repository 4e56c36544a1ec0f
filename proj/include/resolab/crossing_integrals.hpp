#ifndef RESOLAB_CROSSING_INTEGRALS_HPP
#define RESOLAB_CROSSING_INTEGRALS_HPP

namespace resolab {

/// Slopes of the two potentials at the crossing, with the derived combined
/// slope tau3 = tau1*tau2/(tau1+tau2).  tau3 is always computed, never set.
struct SlopePair {
  double tau1;
  double tau2;
  double tau3;

  SlopePair(double t1, double t2);
};

enum class Side { L, R };
enum class Kind { A, B };

/// One Ai*Ai crossing integral over [0, inf):
///   mu_1(t) = int Ai(tau1^{1/3}(y - t/tau1)) Ai(-tau2^{1/3}(y + t/tau2)) dy,
///   mu_2 the same with the roles of tau1 and tau2 exchanged.
/// Absolute accuracy 1e-9 or better for |t| <= 10.
double mu(int j, double t, const SlopePair& slopes);

/// The eight semi-infinite Ai'/Bi' cross integrals: side R integrates over
/// [0, inf), side L over (-inf, 0]; kind A pairs with Ai, kind B with Bi;
/// j says which factor carries the derivative.
double nu(int j, Side side, Kind kind, double t, const SlopePair& slopes);

/// Closed form of the full-line Ai*Ai integral:
///   (tau1+tau2)^{-1/3} Ai(-tau3^{-2/3} t).
double airy_product_closed_form(double t, const SlopePair& slopes);

/// All ten integrals at one rescaled energy t.
struct CrossingIntegrals {
  double t;
  double mu1, mu2;
  double nuA1R, nuB1R, nuA2R, nuB2R;
  double nuA1L, nuB1L, nuA2L, nuB2L;

  double nuA1_sum() const { return nuA1R + nuA1L; }
  double nuA2_sum() const { return nuA2R + nuA2L; }
};

CrossingIntegrals evaluate_crossing_integrals(double t, const SlopePair& slopes);

/// Full-line Ai*Ai integral computed as the L-side plus R-side pieces
/// (never by a single improper rule); matches the closed form to 1e-8.
double airy_product_full_line(double t, const SlopePair& slopes);

}  // namespace resolab

#endif
