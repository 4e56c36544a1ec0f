#include "resolab/action.hpp"

#include <array>
#include <cmath>
#include <string>

#include "resolab/errors.hpp"
#include "resolab/quadrature.hpp"

namespace resolab {
namespace {

// Brent root of f on [a, b] (f(a), f(b) of opposite sign).
template <class F>
double brent(F&& f, double a, double b, double xtol = 1e-15) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw RangeError("turning point bracket does not straddle the root");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 2.2e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;
    } else {
      double p, q, r, s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
  }
  return b;
}

// golden-section minimum of f on [a, b]
template <class F>
double golden_min(F&& f, double a, double b) {
  const double g = 0.6180339887498949;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 120; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - g * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + g * (b - a); f2 = f(x2);
    }
    if (b - a < 1e-12) break;
  }
  return 0.5 * (a + b);
}

struct WellShape {
  double x_bottom;   // minimum of v1 inside the well
  double v_min;
  double left_edge;  // scan limits used for bracketing
  double right_edge;
  double e_min, e_max;
};

WellShape well_shape(const CrossingModel& m) {
  WellShape w;
  auto v = [&](double x) { return m.v1_real(x); };
  w.x_bottom = golden_min(v, m.xstar, 0.0);
  w.v_min = v(w.x_bottom);
  w.left_edge = m.xstar - 2.0;
  w.right_edge = 2.0;
  // grow the right edge while v1 keeps rising (family-independent)
  while (w.right_edge < 8.0 && v(w.right_edge + 0.5) > v(w.right_edge)) w.right_edge += 0.5;
  w.e_max = 0.9 * std::min(v(w.left_edge), v(w.right_edge));
  w.e_min = 0.95 * w.v_min;
  return w;
}

}  // namespace

std::pair<double, double> action_energy_window(const CrossingModel& model) {
  const WellShape w = well_shape(model);
  return {w.e_min, w.e_max};
}

std::pair<double, double> turning_points(const CrossingModel& model, double e) {
  const WellShape w = well_shape(model);
  if (!(e > w.e_min && e < w.e_max))
    throw RangeError("turning_points: E = " + std::to_string(e) +
                     " outside bracketed window [" + std::to_string(w.e_min) + ", " +
                     std::to_string(w.e_max) + "]");
  auto g = [&](double x) { return model.v1_real(x) - e; };
  const double x1s = brent(g, w.left_edge, w.x_bottom);
  const double x1 = brent(g, w.x_bottom, w.right_edge);
  return {x1s, x1};
}

double action(const CrossingModel& model, double e) {
  auto [x1s, x1] = turning_points(model, e);
  auto f = [&](double t) {
    const double q = e - model.v1_real(t);
    return q > 0.0 ? std::sqrt(q) : 0.0;
  };
  return integrate_tanh_sinh(f, x1s, x1, 1e-13).value;
}

double action_derivative(const CrossingModel& model, double e) {
  auto [x1s, x1] = turning_points(model, e);
  auto f = [&](double t) {
    const double q = e - model.v1_real(t);
    // q can round below zero within the root tolerance of the endpoints;
    // that sliver is ~1e-15 wide and carries ~sqrt of that in integral mass
    return q > 0.0 ? 0.5 / std::sqrt(q) : 0.0;
  };
  return integrate_tanh_sinh(f, x1s, x1, 1e-12).value;
}

ActionData action_derivatives(const CrossingModel& model) {
  const double s0 = 5e-3;
  constexpr int kLevels = 4;

  auto a = [&](double e) { return action(model, e); };
  const double a_at_0 = a(0.0);

  // Richardson tables over step halving; the difference quotients have even
  // error expansions, so each column cancels one power of s^2.
  auto richardson = [&](auto&& phi) {
    std::array<double, kLevels> t;
    for (int i = 0; i < kLevels; ++i) t[i] = phi(s0 / (1 << i));
    for (int j = 1; j < kLevels; ++j) {
      const double f = std::pow(4.0, j);
      for (int i = kLevels - 1; i >= j; --i) t[i] = (f * t[i] - t[i - 1]) / (f - 1.0);
    }
    return t[kLevels - 1];
  };

  ActionData d;
  d.a0 = a_at_0;
  d.a1 = richardson([&](double s) { return (a(s) - a(-s)) / (2.0 * s); });
  d.a2 = richardson([&](double s) { return (a(s) - 2.0 * a_at_0 + a(-s)) / (s * s); });
  d.a3 = richardson(
      [&](double s) { return (a(2 * s) - 2.0 * a(s) + 2.0 * a(-s) - a(-2 * s)) / (2.0 * s * s * s); });

  const double a1_direct = action_derivative(model, 0.0);
  if (std::abs(d.a1 - a1_direct) > 1e-6 * std::abs(a1_direct))
    throw ConsistencyError("action derivative routes disagree: Richardson " +
                           std::to_string(d.a1) + " vs singular quadrature " +
                           std::to_string(a1_direct));

  auto [emin, emax] = action_energy_window(model);
  d.e_min = emin;
  d.e_max = emax;
  return d;
}

}  // namespace resolab
