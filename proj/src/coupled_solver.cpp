#include "resolab/coupled_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "resolab/errors.hpp"

namespace resolab {
namespace {

using State = std::array<Complex, 8>;  // (u1, p1, u2, p2) for two solutions

State operator+(const State& a, const State& b) {
  State r;
  for (int i = 0; i < 8; ++i) r[i] = a[i] + b[i];
  return r;
}

State operator*(double c, const State& a) {
  State r;
  for (int i = 0; i < 8; ++i) r[i] = c * a[i];
  return r;
}

// Directed integration path: a list of straight segments.
struct Path {
  struct Seg {
    Complex x0, dir;
    double len;
  };
  std::vector<Seg> segs;
  double total = 0.0;

  void add(Complex x0, Complex dir, double len) {
    segs.push_back({x0, dir, len});
    total += len;
  }
};

struct Rhs {
  const CrossingModel& m;
  Complex e;
  double h;
  long* evals;

  State operator()(Complex x, Complex eta, const State& y) const {
    ++*evals;
    const Complex v1 = m.v1(x), v2 = m.v2(x);
    const Complex r0 = m.r0(x), r1 = m.r1(x), r1p = m.r1p(x);
    const double h2 = h * h;
    State d;
    for (int s = 0; s < 2; ++s) {
      const Complex u1 = y[4 * s], p1 = y[4 * s + 1], u2 = y[4 * s + 2], p2 = y[4 * s + 3];
      d[4 * s] = eta * p1;
      d[4 * s + 1] = eta * ((v1 - e) * u1 + h * r0 * u2 + h2 * r1 * p2) / h2;
      d[4 * s + 2] = eta * p2;
      // W* carries the derivative of r1 alongside -r1 d/dx
      d[4 * s + 3] = eta * ((v2 - e) * u2 + h * r0 * u1 - h2 * r1 * p1 - h2 * r1p * u1) / h2;
    }
    return d;
  }
};

// Dormand-Prince 5(4) with FSAL, fixed tableau.
struct Dopri5 {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0, e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                          e4 = 125.0 / 192.0 - 393.0 / 640.0,
                          e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                          e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
};

double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
  double m = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    m = std::max(m, std::abs(err[i]) / sc);
  }
  return m;
}

// Integrate one segment [0, len] along x0 + s*dir, adaptively.  hs carries
// the step size across calls.
void integrate_segment(const Rhs& rhs, Complex x0, Complex dir, double len, State& y,
                       double atol, double rtol, double min_step, double& hs_io) {
  using T = Dopri5;
  double s = 0.0;
  double hs = std::min(len, hs_io);
  State k1 = rhs(x0, dir, y);
  while (s < len) {
    hs = std::min(hs, len - s);
    const auto xat = [&](double ds) { return x0 + (s + ds) * dir; };
    const State k2 = rhs(xat(0.2 * hs), dir, y + (hs * T::a21) * k1);
    const State k3 = rhs(xat(0.3 * hs), dir, y + (hs * T::a31) * k1 + (hs * T::a32) * k2);
    const State k4 =
        rhs(xat(0.8 * hs), dir, y + (hs * T::a41) * k1 + (hs * T::a42) * k2 + (hs * T::a43) * k3);
    const State k5 = rhs(xat(8.0 / 9.0 * hs), dir,
                         y + (hs * T::a51) * k1 + (hs * T::a52) * k2 + (hs * T::a53) * k3 +
                             (hs * T::a54) * k4);
    const State k6 = rhs(xat(hs), dir,
                         y + (hs * T::a61) * k1 + (hs * T::a62) * k2 + (hs * T::a63) * k3 +
                             (hs * T::a64) * k4 + (hs * T::a65) * k5);
    const State ynew = y + (hs * T::b1) * k1 + (hs * T::b3) * k3 + (hs * T::b4) * k4 +
                       (hs * T::b5) * k5 + (hs * T::b6) * k6;
    const State k7 = rhs(xat(hs), dir, ynew);
    const State errv = (hs * T::e1) * k1 + (hs * T::e3) * k3 + (hs * T::e4) * k4 +
                       (hs * T::e5) * k5 + (hs * T::e6) * k6 + (hs * T::e7) * k7;
    const double err = error_norm(errv, y, ynew, atol, rtol);
    if (err <= 1.0) {
      s += hs;
      y = ynew;
      k1 = k7;  // FSAL
    } else if (hs < min_step) {
      throw SolverError("step size underflow on contour segment (stiffness)");
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    if (!(fac > 0.0)) fac = 0.2;  // err became NaN
    fac = std::clamp(fac, 0.2, 5.0);
    hs *= fac;
  }
  hs_io = hs;
}

// Pairwise Gram-Schmidt on the two 4-component solutions; determinant
// factors are absorbed into the per-solution log scales exactly, so
// w * exp(sum of log scales) stays the analytic Wronskian.
void reorthonormalize(State& y, double& ls_a, double& ls_b) {
  double na = 0.0;
  for (int i = 0; i < 4; ++i) na += std::norm(y[i]);
  na = std::sqrt(na);
  if (na == 0.0) throw SolverError("basis solution collapsed to zero");
  for (int i = 0; i < 4; ++i) y[i] /= na;
  ls_a += std::log(na);

  Complex proj = 0.0;
  for (int i = 0; i < 4; ++i) proj += std::conj(y[i]) * y[4 + i];
  double nb_before = 0.0;
  for (int i = 0; i < 4; ++i) nb_before += std::norm(y[4 + i]);
  nb_before = std::sqrt(nb_before);
  for (int i = 0; i < 4; ++i) y[4 + i] -= proj * y[i];
  double nb = 0.0;
  for (int i = 0; i < 4; ++i) nb += std::norm(y[4 + i]);
  nb = std::sqrt(nb);
  if (nb < 1e-14 * nb_before)
    throw SolverError("basis rank collapse despite re-orthonormalization");
  for (int i = 0; i < 4; ++i) y[4 + i] /= nb;
  ls_b += std::log(nb);
}

// WKB channel vector decaying away from the crossing region: value
// q^{-1/4}, derivative d/dx of q^{-1/4} exp(-sgn int sqrt(q)/h).
// sgn = +1 when the decaying direction is increasing x.
void wkb_init(Complex q, Complex qp, double h, double sgn, Complex& u, Complex& p) {
  const Complex q14 = std::pow(q, 0.25);
  u = 1.0 / q14;
  p = -sgn * std::sqrt(q) / h * u - 0.25 * qp / (q * q14);
}

}  // namespace

double SolutionBasis::condition() const {
  // singular values of the 2x4 matrix via its 2x2 Gram matrix
  const BasisSolution* s[2] = {&a, &b};
  Complex g[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex vi[4] = {s[i]->u1, s[i]->p1, s[i]->u2, s[i]->p2};
      const Complex vj[4] = {s[j]->u1, s[j]->p1, s[j]->u2, s[j]->p2};
      Complex acc = 0.0;
      for (int t = 0; t < 4; ++t) acc += std::conj(vi[t]) * vj[t];
      g[i][j] = acc;
    }
  const double tr = g[0][0].real() + g[1][1].real();
  const double det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double s1 = tr / 2.0 + disc, s2 = std::max(tr / 2.0 - disc, 0.0);
  return s2 > 0.0 ? std::sqrt(s1 / s2) : std::numeric_limits<double>::infinity();
}

CoupledSolver::CoupledSolver(const CrossingModel& model, const DistortionContour& contour,
                             SolverOptions opts)
    : model_(model), contour_(contour), opts_(opts) {}

SolutionBasis CoupledSolver::propagate_basis(Complex e, double h, Side side) const {
  Path path;
  State y{};
  const Complex ray_dir = std::polar(1.0, contour_.theta);

  if (side == Side::L) {
    const Complex xl(-contour_.l_left, 0.0);
    // both channels classically forbidden at the left end
    wkb_init(model_.v1(xl) - e, model_.v1p(xl), h, -1.0, y[0], y[1]);
    wkb_init(model_.v2(xl) - e, model_.v2p(xl), h, -1.0, y[6], y[7]);
    path.add(xl, Complex(1.0, 0.0), contour_.l_left);
  } else {
    const Complex xr = Complex(contour_.x_inf, 0.0) + contour_.l_right * ray_dir;
    // channel 1 forbidden, channel 2 open but damped along the ray
    wkb_init(model_.v1(xr) - e, model_.v1p(xr), h, +1.0, y[0], y[1]);
    {
      const Complex q = e - model_.v2(xr);
      const Complex q14 = std::pow(q, 0.25);
      y[6] = 1.0 / q14;
      y[7] = Complex(0.0, 1.0) * std::sqrt(q) / h * y[6] + 0.25 * model_.v2p(xr) / (q * q14);
    }
    path.add(xr, -ray_dir, contour_.l_right);
    path.add(Complex(contour_.x_inf, 0.0), Complex(-1.0, 0.0), contour_.x_inf);
  }

  Rhs rhs{model_, e, h, &rhs_evals_};
  double ls_a = 0.0, ls_b = 0.0;
  const double reorth_ds = opts_.reorth_ds > 0.0 ? opts_.reorth_ds : h;
  double hs = reorth_ds;
  reorthonormalize(y, ls_a, ls_b);
  for (const auto& seg : path.segs) {
    double s = 0.0;
    // the 1e-9 slack absorbs rounding dust at chunk boundaries
    while (s < seg.len - 1e-9) {
      const double chunk = std::min(reorth_ds, seg.len - s);
      integrate_segment(rhs, seg.x0 + s * seg.dir, seg.dir, chunk, y, opts_.atol, opts_.rtol,
                        opts_.min_step, hs);
      s += chunk;
      reorthonormalize(y, ls_a, ls_b);
    }
  }

  SolutionBasis basis;
  basis.side = side;
  basis.a = {y[0], y[1], y[2], y[3], ls_a};
  basis.b = {y[4], y[5], y[6], y[7], ls_b};
  return basis;
}

WronskianValue CoupledSolver::wronskian(Complex e, double h) const {
  const SolutionBasis l = propagate_basis(e, h, Side::L);
  const SolutionBasis r = propagate_basis(e, h, Side::R);
  // rows: u1, u2, p1, p2; columns: the four basis solutions
  const BasisSolution* col[4] = {&l.a, &l.b, &r.a, &r.b};
  Complex mat[4][4];
  for (int j = 0; j < 4; ++j) {
    mat[0][j] = col[j]->u1;
    mat[1][j] = col[j]->u2;
    mat[2][j] = col[j]->p1;
    mat[3][j] = col[j]->p2;
  }
  // 4x4 determinant by Gaussian elimination with partial pivoting
  Complex det = 1.0;
  for (int i = 0; i < 4; ++i) {
    int piv = i;
    for (int r2 = i + 1; r2 < 4; ++r2)
      if (std::abs(mat[r2][i]) > std::abs(mat[piv][i])) piv = r2;
    if (piv != i) {
      for (int c = 0; c < 4; ++c) std::swap(mat[i][c], mat[piv][c]);
      det = -det;
    }
    if (mat[i][i] == Complex(0.0, 0.0)) {
      det = 0.0;
      break;
    }
    det *= mat[i][i];
    for (int r2 = i + 1; r2 < 4; ++r2) {
      const Complex f = mat[r2][i] / mat[i][i];
      for (int c = i; c < 4; ++c) mat[r2][c] -= f * mat[i][c];
    }
  }
  const double ls = l.a.log_scale + l.b.log_scale + r.a.log_scale + r.b.log_scale;
  return {det, ls, e, h};
}

}  // namespace resolab
