#ifndef RESOLAB_QUADRATURE_HPP
#define RESOLAB_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "resolab/errors.hpp"

namespace resolab {

struct QuadResult {
  double value;
  double error;  // estimated absolute error
  long evals;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr std::array<double, 8> kGk15X = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kGk15W = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kG7W = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
QuadResult gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kG7W[3];
  double resk = fc * kGk15W[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kGk15X[j];
    const double f1 = f(c - dx), f2 = f(c + dx);
    resk += kGk15W[j] * (f1 + f2);
    if (j % 2 == 1) resg += kG7W[j / 2] * (f1 + f2);
  }
  const double value = resk * hl;
  const double err = std::abs((resk - resg) * hl);
  return {value, err, 15};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod on [a, b] to absolute tolerance.  Bisects the
/// worst panels first via an explicit stack; depth-limited.
template <class F>
QuadResult integrate_gk_adaptive(F&& f, double a, double b, double abs_tol,
                                 int max_depth = 48) {
  struct Panel {
    double a, b, value, error;
    int depth;
  };
  auto q0 = detail::gk15(f, a, b);
  long evals = q0.evals;
  if (q0.error <= abs_tol) return {q0.value, q0.error, evals};

  std::array<Panel, 512> stack;
  int top = 0;
  stack[top++] = {a, b, q0.value, q0.error, 0};
  double total = 0.0, total_err = 0.0;
  while (top > 0) {
    Panel p = stack[--top];
    if (p.error <= abs_tol * ((p.b - p.a) / (b - a)) || p.depth >= max_depth ||
        top >= static_cast<int>(stack.size()) - 2) {
      total += p.value;
      total_err += p.error;
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    auto l = detail::gk15(f, p.a, m);
    auto r = detail::gk15(f, m, p.b);
    evals += l.evals + r.evals;
    stack[top++] = {p.a, m, l.value, l.error, p.depth + 1};
    stack[top++] = {m, p.b, r.value, r.error, p.depth + 1};
  }
  return {total, total_err, evals};
}

/// Double-exponential (tanh-sinh) quadrature on (a, b).  Nodes cluster at
/// the endpoints, which neutralizes integrable endpoint singularities and
/// square-root vanishing of analytic integrands.  Levels are doubled until
/// successive values agree within abs_tol.
template <class F>
QuadResult integrate_tanh_sinh(F&& f, double a, double b, double abs_tol,
                               int max_level = 12) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  constexpr double kTMax = 6.5;  // weight ~ exp(-pi/2 sinh t) is < 1e-300 past here

  auto node_sum = [&](double h, bool odd_only) {
    double sum = 0.0;
    long n = 0;
    const int step = odd_only ? 2 : 1;
    const int k0 = odd_only ? 1 : 0;
    for (int k = k0;; k += step) {
      const double t = k * h;
      if (t > kTMax) break;
      const double sh = 0.5 * M_PI * std::sinh(t);
      const double ch = std::cosh(sh);
      const double w = 0.5 * M_PI * std::cosh(t) / (ch * ch);
      const double u = std::tanh(sh);
      const double xp = mid + half * u, xm = mid - half * u;
      double contrib = 0.0;
      if (xp > a && xp < b) contrib += f(xp);
      if (k > 0 && xm > a && xm < b) contrib += f(xm);
      sum += w * contrib;
      n += (k > 0) ? 2 : 1;
      if (k > 0 && w < 1e-18 && std::abs(w * contrib) < 1e-18 * (1.0 + std::abs(sum)))
        break;
    }
    return std::pair<double, long>{sum, n};
  };

  double h = 1.0;
  auto [s, n0] = node_sum(h, false);
  double value = half * h * s;
  long evals = n0;
  double err = std::abs(value) + 1.0;
  double prev_err = err;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    auto [s_odd, n] = node_sum(h, true);
    s += s_odd;
    evals += n;
    const double next = half * h * s;
    err = std::abs(next - value);
    value = next;
    if (level >= 3 && err <= abs_tol) return {value, err, evals};
    // successive levels no longer improving: roundoff floor reached
    if (level >= 6 && err > 0.25 * prev_err) return {value, err, evals};
    prev_err = err;
  }
  return {value, err, evals};
}

}  // namespace resolab

#endif
