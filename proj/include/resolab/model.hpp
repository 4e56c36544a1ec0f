#ifndef RESOLAB_MODEL_HPP
#define RESOLAB_MODEL_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace resolab {

using Complex = std::complex<double>;
using AnalyticFn = std::function<Complex(Complex)>;

/// Two-channel crossing model: a bonding potential v1 with a well between
/// xstar and 0, an anti-bonding v2 crossing it transversally at the origin,
/// and the interaction coefficients r0 (scalar part) and r1 (vector-field
/// part).  All functions evaluate at complex arguments inside the analytic
/// strip; derivatives are hand-coded and validated numerically.
struct CrossingModel {
  AnalyticFn v1, v2;
  AnalyticFn v1p, v2p;
  AnalyticFn r0, r1, r1p;

  double xstar = -1.0;
  double tau1 = 1.0;
  double tau2 = 1.0;
  double delta0 = 0.3;
  double v1_inf_minus = 1.0, v1_inf_plus = 1.0;
  double v2_inf_minus = 1.0, v2_inf_plus = -1.0;

  std::string family = "rational";
  double c = 1.0;        // overall scale of v1 (tau1 = -c*xstar)
  double r0bar = 0.0;    // constant scalar coupling
  double r1bar = 1.0;    // vector-field coupling amplitude
  bool r1_gaussian = false;

  double v1_real(double x) const { return v1(Complex(x, 0.0)).real(); }
  double v2_real(double x) const { return v2(Complex(x, 0.0)).real(); }
  bool r0_is_zero() const { return r0bar == 0.0; }
};

struct ModelParams {
  std::string family = "rational";  // "rational" | "parabolic"
  double c = 1.0;
  double xstar = -1.0;
  double tau2 = 1.0;
  double r0bar = 0.0;
  double r1bar = 1.0;
  bool r1_gaussian = false;
};

CrossingModel make_model(const ModelParams& params);

/// Built-in instance: v1 = x(x-xstar)/sqrt(1+x^4) with xstar = -1 and
/// v2 = -x/sqrt(1+x^2); r0 = 0, r1 = 1.
CrossingModel default_model();

/// Integration path: real segment [-l_left, x_inf] followed by the ray
/// x_inf + s e^{i theta}, s in [0, l_right].
struct DistortionContour {
  double theta = 0.3;
  double x_inf = 1.0;
  double l_left = 6.0;
  double l_right = 4.0;

  double total_length() const { return l_left + x_inf + l_right; }
};

/// Contour sized for a given h: the ray is long enough that the open
/// channel has decayed below 1e-18 at the endpoint.
DistortionContour auto_contour(const CrossingModel& model, double h, double c0);

struct PathSample {
  double s;        // arc length from the left endpoint
  Complex x;       // position
  Complex dxds;    // path derivative (1 on the segment, e^{i theta} on the ray)
};

/// n samples of the contour, arc-length parametrized, n >= 2.
std::vector<PathSample> contour_points(const DistortionContour& contour, int n);

struct ValidationIssue {
  std::string assumption;
  bool pass;
  std::string detail;
  double witness;  // offending grid point when pass is false, else NaN
};

struct ValidationReport {
  std::vector<ValidationIssue> checks;
  bool all_pass() const;
  bool thm2_admissible() const;  // r0 identically zero, r1 real
  std::string summary() const;
};

/// Grid validation of the model assumptions: crossing data, sign pattern,
/// limits, slopes (finite-difference checked), interaction reality.
/// Failures are reported as data, not exceptions.
ValidationReport validate(const CrossingModel& model);

/// min over the rotated ray of Im int_{x_inf}^{x(s)} sqrt(E - v2) dt,
/// branch tracked continuously from the corner.  The distortion is usable
/// at (E, h) when this stays >= -C h.
double contour_decay_margin(const CrossingModel& model, const DistortionContour& contour,
                            Complex e, int n_samples = 400);

}  // namespace resolab

#endif
