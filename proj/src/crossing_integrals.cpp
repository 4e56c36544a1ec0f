#include "resolab/crossing_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "resolab/airy.hpp"
#include "resolab/errors.hpp"
#include "resolab/quadrature.hpp"

namespace resolab {
namespace {

constexpr double kTRangeMax = 10.0;
constexpr double kQuadTol = 1e-11;

void check_t(double t) {
  if (!(std::abs(t) <= kTRangeMax))
    throw RangeError("crossing integral argument |t| = " + std::to_string(std::abs(t)) +
                     " exceeds calibrated range 10");
}

enum class Comp { Ai, Aip, Bi, Bip };

double pick(const AiryValue& v, Comp c) {
  switch (c) {
    case Comp::Ai: return v.ai;
    case Comp::Aip: return v.aip;
    case Comp::Bi: return v.bi;
    default: return v.bip;
  }
}

// Common kernel over [0, inf):
//   int Fd(sd^{1/3}(y - t/sd)) * Fo(-so^{1/3}(y + t/so)) dy
// The first factor decays super-exponentially once its argument is positive;
// the second oscillates with slowly decaying envelope as y grows.  Every mu
// and nu integral reduces to this form (the L sides after y -> -y).
double kernel(Comp fd, Comp fo, double sd, double so, double t, double tol) {
  const double sd13 = std::cbrt(sd), so13 = std::cbrt(so);
  // cutoff where the decaying factor is below ~1e-48 (argument 16.5)
  const double y_cut = std::max(1.0, t / sd + 16.5 / sd13);

  auto integrand = [&](double y) {
    const double ad = sd13 * (y - t / sd);
    const double ao = -so13 * (y + t / so);
    return pick(airy_eval(ad), fd) * pick(airy_eval(ao), fo);
  };

  // Panels capped at the local oscillation wavelength of either factor.
  double total = 0.0;
  double y = 0.0;
  while (y < y_cut) {
    const double ad = sd13 * (y - t / sd);
    const double ao = so13 * (y + t / so);
    double rate = 0.0;  // combined phase rate d(zeta)/dy of oscillating factors
    if (ad < 0.0) rate += sd13 * sd13 * std::sqrt(-ad);
    if (ao > 0.0) rate += so13 * so13 * std::sqrt(ao);
    const double len = std::min(1.0, M_PI / std::max(1.0, rate));
    const double y1 = std::min(y_cut, y + len);
    total += integrate_gk_adaptive(integrand, y, y1, tol * std::max(0.02, len / y_cut)).value;
    y = y1;
  }
  return total;
}

}  // namespace

SlopePair::SlopePair(double t1, double t2) : tau1(t1), tau2(t2) {
  if (!(t1 > 0.0) || !(t2 > 0.0))
    throw MisuseError("SlopePair requires tau1 > 0 and tau2 > 0");
  tau3 = t1 * t2 / (t1 + t2);
}

double mu(int j, double t, const SlopePair& slopes) {
  check_t(t);
  if (j == 1) return kernel(Comp::Ai, Comp::Ai, slopes.tau1, slopes.tau2, t, kQuadTol);
  if (j == 2) return kernel(Comp::Ai, Comp::Ai, slopes.tau2, slopes.tau1, t, kQuadTol);
  throw MisuseError("mu: j must be 1 or 2");
}

double nu(int j, Side side, Kind kind, double t, const SlopePair& slopes) {
  check_t(t);
  if (j != 1 && j != 2) throw MisuseError("nu: j must be 1 or 2");
  const double t1 = slopes.tau1, t2 = slopes.tau2;
  const Comp osc_a = Comp::Ai, osc_ap = Comp::Aip;
  const Comp osc_b = Comp::Bi, osc_bp = Comp::Bip;
  if (side == Side::R) {
    if (j == 1)
      return kernel(Comp::Aip, kind == Kind::A ? osc_a : osc_b, t1, t2, t, kQuadTol);
    return kernel(Comp::Ai, kind == Kind::A ? osc_ap : osc_bp, t1, t2, t, kQuadTol);
  }
  // L side, reflected onto [0, inf): the decaying slot is carried by tau2.
  if (j == 1)
    return kernel(Comp::Ai, kind == Kind::A ? osc_ap : osc_bp, t2, t1, t, kQuadTol);
  return kernel(Comp::Aip, kind == Kind::A ? osc_a : osc_b, t2, t1, t, kQuadTol);
}

double airy_product_closed_form(double t, const SlopePair& slopes) {
  check_t(t);
  const double arg = -t / std::cbrt(slopes.tau3 * slopes.tau3);
  return airy_eval(arg).ai / std::cbrt(slopes.tau1 + slopes.tau2);
}

double airy_product_full_line(double t, const SlopePair& slopes) {
  return mu(1, t, slopes) + mu(2, t, slopes);
}

CrossingIntegrals evaluate_crossing_integrals(double t, const SlopePair& slopes) {
  CrossingIntegrals r;
  r.t = t;
  r.mu1 = mu(1, t, slopes);
  r.mu2 = mu(2, t, slopes);
  r.nuA1R = nu(1, Side::R, Kind::A, t, slopes);
  r.nuB1R = nu(1, Side::R, Kind::B, t, slopes);
  r.nuA2R = nu(2, Side::R, Kind::A, t, slopes);
  r.nuB2R = nu(2, Side::R, Kind::B, t, slopes);
  r.nuA1L = nu(1, Side::L, Kind::A, t, slopes);
  r.nuB1L = nu(1, Side::L, Kind::B, t, slopes);
  r.nuA2L = nu(2, Side::L, Kind::A, t, slopes);
  r.nuB2L = nu(2, Side::L, Kind::B, t, slopes);
  return r;
}

}  // namespace resolab
