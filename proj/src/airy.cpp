#include "resolab/airy.hpp"

#include <array>
#include <cmath>
#include <string>

#include "resolab/errors.hpp"

namespace resolab {
namespace {

constexpr double kAi0 = 0.35502805388781723926;    // 3^{-2/3}/Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841;  // -3^{-1/3}/Gamma(1/3)
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt3 = 1.7320508075688772935;

// Maclaurin series of the two standard solutions of w'' = x w:
//   f = 1 + x^3/6 + ...,  g = x + x^4/12 + ...
// Ai = c1 f - c2 g, Bi = sqrt(3)(c1 f + c2 g) with c1 = Ai(0), c2 = -Ai'(0).
struct FgValue {
  double f, fp, g, gp;
};

FgValue maclaurin_fg(double x) {
  const double x3 = x * x * x;
  double tf = 1.0, f = 1.0, fp = 0.0;
  double tg = x, g = x, gp = 1.0;
  for (int k = 0; k < 120; ++k) {
    tf *= x3 / ((3 * k + 2) * (3 * k + 3));
    tg *= x3 / ((3 * k + 3) * (3 * k + 4));
    f += tf;
    g += tg;
    // d/dx of x^{3k} and x^{3k+1} terms
    fp += (3 * k + 3) * tf / x;
    gp += (3 * k + 4) * tg / x;
    if (std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::abs(g) && k > 3)
      break;
  }
  return {f, fp, g, gp};
}

AiryValue from_fg(double x) {
  if (x == 0.0) return {kAi0, kAip0, kSqrt3 * kAi0, -kSqrt3 * kAip0};
  const FgValue v = maclaurin_fg(x);
  const double c1 = kAi0, c2 = -kAip0;
  return {c1 * v.f - c2 * v.g, c1 * v.fp - c2 * v.gp,
          kSqrt3 * (c1 * v.f + c2 * v.g), kSqrt3 * (c1 * v.fp + c2 * v.gp)};
}

// Coefficients u_k, v_k of the large-|x| expansions (u_0 = v_0 = 1).
constexpr int kAsymTerms = 44;
struct AsymCoeffs {
  std::array<double, kAsymTerms> u{}, v{};
};

const AsymCoeffs& asym_coeffs() {
  static const AsymCoeffs c = [] {
    AsymCoeffs a;
    a.u[0] = a.v[0] = 1.0;
    for (int k = 1; k < kAsymTerms; ++k) {
      a.u[k] = a.u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
               (216.0 * k * (2.0 * k - 1.0));
      a.v[k] = a.u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
    return a;
  }();
  return c;
}

// Sum_{k} s^k c_k / zeta^k truncated at the smallest term (s = +-1).
double asym_sum(const std::array<double, kAsymTerms>& c, double zeta, double sign) {
  double sum = c[0], term = 1.0, prev = std::abs(c[0]);
  for (int k = 1; k < kAsymTerms; ++k) {
    term *= sign / zeta;
    const double t = c[k] * term;
    if (std::abs(t) > prev) break;  // divergent tail reached
    sum += t;
    prev = std::abs(t);
    if (prev < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// zeta = (2/3) x^{3/2} as a compensated double-double.  For |x| ~ 100 the
// phase is ~600 rad and a bare 0.5 ulp of zeta already costs 1e-14 absolute
// in the oscillatory values, so the low part is carried explicitly.
struct DD {
  double hi, lo;
};

DD zeta_dd(double x) {
  const double s = std::sqrt(x);
  const double ds = -std::fma(s, s, -x) / (2.0 * s);  // sqrt correction
  const double ph = x * s;
  const double pl = std::fma(x, s, -ph) + x * ds;
  const double q = 2.0 * ph;
  const double zh = q / 3.0;
  const double zl = (std::fma(-zh, 3.0, q) + 2.0 * pl) / 3.0;
  return {zh, zl};
}

AiryValue asym_positive(double x) {
  const double sq = std::sqrt(x);
  const DD z = zeta_dd(x);
  const double zeta = z.hi;
  const double x14 = std::sqrt(sq);
  const auto& c = asym_coeffs();
  const double su_m = asym_sum(c.u, zeta, -1.0);
  const double sv_m = asym_sum(c.v, zeta, -1.0);
  const double su_p = asym_sum(c.u, zeta, 1.0);
  const double sv_p = asym_sum(c.v, zeta, 1.0);
  const double em = std::exp(-zeta) * (1.0 - z.lo);
  const double ep = std::exp(zeta) * (1.0 + z.lo);
  return {em / (2.0 * kSqrtPi * x14) * su_m, -x14 * em / (2.0 * kSqrtPi) * sv_m,
          ep / (kSqrtPi * x14) * su_p, x14 * ep / kSqrtPi * sv_p};
}

// Even/odd split of the oscillatory expansions on the negative axis.
double asym_sum_even(const std::array<double, kAsymTerms>& c, double zeta) {
  double sum = c[0], z2 = zeta * zeta, term = 1.0, prev = std::abs(c[0]);
  for (int k = 1; 2 * k < kAsymTerms; ++k) {
    term *= -1.0 / z2;
    const double t = c[2 * k] * term;
    if (std::abs(t) > prev) break;
    sum += t;
    prev = std::abs(t);
    if (prev < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double asym_sum_odd(const std::array<double, kAsymTerms>& c, double zeta) {
  double sum = c[1] / zeta, z2 = zeta * zeta, term = 1.0 / zeta, prev = std::abs(sum);
  for (int k = 1; 2 * k + 1 < kAsymTerms; ++k) {
    term *= -1.0 / z2;
    const double t = c[2 * k + 1] * term;
    if (std::abs(t) > prev) break;
    sum += t;
    prev = std::abs(t);
    if (prev < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

AiryValue asym_negative(double xabs) {
  const double sq = std::sqrt(xabs);
  const DD z = zeta_dd(xabs);
  const double zeta = z.hi;
  const double x14 = std::sqrt(sq);
  constexpr double kPio4Hi = 7.853981633974482790e-01;
  constexpr double kPio4Lo = 3.061616997868383018e-17;
  const double wh = zeta - kPio4Hi;
  const double wl = ((zeta - wh) - kPio4Hi) + z.lo - kPio4Lo;
  const auto& c = asym_coeffs();
  const double pu = asym_sum_even(c.u, zeta), qu = asym_sum_odd(c.u, zeta);
  const double pv = asym_sum_even(c.v, zeta), qv = asym_sum_odd(c.v, zeta);
  const double ch = std::cos(wh), sh = std::sin(wh);
  const double cw = ch - wl * sh;
  const double sw = sh + wl * ch;
  return {(cw * pu + sw * qu) / (kSqrtPi * x14),
          x14 / kSqrtPi * (sw * pv - cw * qv),
          (-sw * pu + cw * qu) / (kSqrtPi * x14),
          x14 / kSqrtPi * (cw * pv + sw * qv)};
}

// One Taylor step for w'' = x w: given (w, w') at a, return values at a + s.
// Local coefficients obey (n+2)(n+1) c_{n+2} = a c_n + c_{n-1}.
std::pair<double, double> taylor_step(double a, double w, double wp, double s) {
  constexpr int kOrder = 34;
  std::array<double, kOrder + 1> c{};
  c[0] = w;
  c[1] = wp;
  c[2] = 0.5 * a * c[0];
  for (int n = 1; n + 2 <= kOrder; ++n)
    c[n + 2] = (a * c[n] + c[n - 1]) / ((n + 2.0) * (n + 1.0));
  double val = c[kOrder];
  double der = kOrder * c[kOrder];
  for (int n = kOrder - 1; n >= 1; --n) {
    val = val * s + c[n];
    der = der * s + n * c[n];
  }
  val = val * s + c[0];
  return {val, der};
}

std::pair<double, double> taylor_step_checked(double a, double w, double wp, double s) {
  if (s == 0.0) return {w, wp};
  return taylor_step(a, w, wp, s);
}

// The positive-axis gap x in (0, 9): the Maclaurin form of Ai cancels
// catastrophically and the divergent expansion has not converged yet, so Ai
// is carried down from x = 9 by Taylor steps (Ai grows in that direction,
// which keeps the recursion stable).  Anchors every 0.375 keep the per-call
// step short.
struct Anchor {
  double x, ai, aip, bi, bip;
};

constexpr int kPosAnchors = 25;  // x = 9.0 down to 0.0, step 0.375

const std::array<Anchor, kPosAnchors>& pos_anchors() {
  static const auto table = [] {
    std::array<Anchor, kPosAnchors> t{};
    const AiryValue seed = asym_positive(9.0);
    double x = 9.0, ai = seed.ai, aip = seed.aip;
    for (int i = 0; i < kPosAnchors; ++i) {
      t[i] = {x, ai, aip, 0.0, 0.0};  // bi via series, not anchored
      auto nxt = taylor_step(x, ai, aip, -0.375);
      ai = nxt.first;
      aip = nxt.second;
      x -= 0.375;
    }
    return t;
  }();
  return table;
}

// Negative axis bridge [-9, -4]: series anchors would cancel, so march
// outward from -4 (neutral stability: both solutions oscillate there).
constexpr int kNegAnchors = 17;  // x = -4.0 down to -9.0, step 0.3125

const std::array<Anchor, kNegAnchors>& neg_anchors() {
  static const auto table = [] {
    std::array<Anchor, kNegAnchors> t{};
    AiryValue v = from_fg(-4.0);
    double x = -4.0;
    for (int i = 0; i < kNegAnchors; ++i) {
      t[i] = {x, v.ai, v.aip, v.bi, v.bip};
      auto na = taylor_step(x, v.ai, v.aip, -0.3125);
      auto nb = taylor_step(x, v.bi, v.bip, -0.3125);
      v = {na.first, na.second, nb.first, nb.second};
      x -= 0.3125;
    }
    return t;
  }();
  return table;
}

}  // namespace

AiryValue airy_eval(double x) {
  if (!(x >= -200.0 && x <= 100.0))
    throw RangeError("airy_eval: argument " + std::to_string(x) +
                     " outside supported range [-200, 100]");
  if (x >= 9.0) return asym_positive(x);
  if (x >= 0.0) {
    const auto& t = pos_anchors();
    int i = static_cast<int>(std::lround((9.0 - x) / 0.375));
    if (i < 0) i = 0;
    if (i >= kPosAnchors) i = kPosAnchors - 1;
    const Anchor& a = t[i];
    auto [ai, aip] = taylor_step_checked(a.x, a.ai, a.aip, x - a.x);
    const AiryValue s = from_fg(x);  // Bi side is cancellation-free here
    return {ai, aip, s.bi, s.bip};
  }
  if (x > -4.0) return from_fg(x);
  if (x >= -9.0) {
    const auto& t = neg_anchors();
    int i = static_cast<int>(std::lround((-4.0 - x) / 0.3125));
    if (i < 0) i = 0;
    if (i >= kNegAnchors) i = kNegAnchors - 1;
    const Anchor& a = t[i];
    auto [ai, aip] = taylor_step_checked(a.x, a.ai, a.aip, x - a.x);
    auto [bi, bip] = taylor_step_checked(a.x, a.bi, a.bip, x - a.x);
    return {ai, aip, bi, bip};
  }
  return asym_negative(-x);
}

std::pair<double, double> airy_scaled_tail(double x) {
  if (!(x >= 4.0))
    throw RangeError("airy_scaled_tail: requires x >= 4, got " + std::to_string(x));
  if (x < 15.0) {
    const AiryValue v = airy_eval(x);
    return {std::log(std::abs(v.ai)), std::log(std::abs(v.bi))};
  }
  const double sq = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * sq;
  const auto& c = asym_coeffs();
  const double su_m = asym_sum(c.u, zeta, -1.0);
  const double su_p = asym_sum(c.u, zeta, 1.0);
  const double lx14 = 0.25 * std::log(x);
  return {-zeta - lx14 - std::log(2.0 * kSqrtPi) + std::log(su_m),
          zeta - lx14 - std::log(kSqrtPi) + std::log(su_p)};
}

}  // namespace resolab
