#ifndef RESOLAB_ASYMPTOTICS_HPP
#define RESOLAB_ASYMPTOTICS_HPP

#include <complex>

#include "resolab/action.hpp"
#include "resolab/crossing_integrals.hpp"
#include "resolab/model.hpp"

namespace resolab {

enum class Provenance { numeric, thm1, thm2, reduced };

const char* provenance_name(Provenance p);

/// One resonance: complex energy e at semiclassical parameter h, with the
/// rescaled coordinate rho = e h^{-2/3} stored alongside (e = rho * h^{2/3}
/// holds exactly as stored).  Widths are nonpositive imaginary parts.
struct Resonance {
  int k;
  std::complex<double> rho;
  std::complex<double> e;
  double h;
  Provenance provenance;

  static Resonance from_rho(int k, std::complex<double> rho, double h, Provenance p);
  static Resonance from_e(int k, std::complex<double> e, double h, Provenance p);
};

/// h^{2/3} and h^{1/3} computed the one canonical way used everywhere.
double h_pow_23(double h);
double h_pow_13(double h);

/// lambda_k(h) = (-A(0) + (k + 1/2) pi h) / (A'(0) h^{2/3}).
double lambda_k(const ActionData& actions, double h, int k);

/// Inclusive k range with |lambda_k| <= c0.
struct KRange {
  int lo, hi;
  int size() const { return hi >= lo ? hi - lo + 1 : 0; }
};
KRange k_window(const ActionData& actions, double h, double c0);

/// Two-term real part plus the h^{5/3} width driven by the scalar coupling
/// r0 and the mu integrals.
Resonance predict_thm1(const CrossingModel& model, const ActionData& actions,
                       const SlopePair& slopes, double h, int k);

/// Three-term real part plus the h^{7/3} width of the vector-field coupling;
/// requires r0 identically zero and r1 real on the axis.
Resonance predict_thm2(const CrossingModel& model, const ActionData& actions,
                       const SlopePair& slopes, double h, int k);

/// Leading imaginary part of the reduced quantization function:
///   pi^2 r1(0)^2 (nuA1R + nuA1L)(nuA2R + nuA2L) at t = rho_re.
double im_g(const CrossingModel& model, const SlopePair& slopes, double rho_re);

/// Reduced quantization: the real part is the exact Bohr-Sommerfeld root of
/// the numeric action (Newton), the width goes through the nu-integral route
/// of im_g instead of the closed-form product.
Resonance predict_reduced(const CrossingModel& model, const ActionData& actions,
                          const SlopePair& slopes, double h, int k);

}  // namespace resolab

#endif
