#include "resolab/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "resolab/errors.hpp"

namespace resolab {
namespace {

constexpr double kFdCheckTol = 1e-8;

double fd_derivative(const AnalyticFn& f, double x) {
  const double h = 1e-6;
  const double f1 = f(Complex(x + h, 0)).real(), m1 = f(Complex(x - h, 0)).real();
  const double f2 = f(Complex(x + 2 * h, 0)).real(), m2 = f(Complex(x - 2 * h, 0)).real();
  return (8.0 * (f1 - m1) - (f2 - m2)) / (12.0 * h);
}

}  // namespace

CrossingModel make_model(const ModelParams& p) {
  if (!(p.xstar < 0.0)) throw MisuseError("model: xstar must be negative");
  if (!(p.c > 0.0) || !(p.tau2 > 0.0)) throw MisuseError("model: c and tau2 must be positive");

  CrossingModel m;
  m.family = p.family;
  m.c = p.c;
  m.xstar = p.xstar;
  m.tau1 = -p.c * p.xstar;
  m.tau2 = p.tau2;
  m.r0bar = p.r0bar;
  m.r1bar = p.r1bar;
  m.r1_gaussian = p.r1_gaussian;

  const double c = p.c, xs = p.xstar, t2 = p.tau2;
  if (p.family == "rational") {
    m.v1 = [c, xs](Complex x) { return c * x * (x - xs) / std::sqrt(1.0 + x * x * x * x); };
    m.v1p = [c, xs](Complex x) {
      const Complex q = 1.0 + x * x * x * x;
      const Complex sq = std::sqrt(q);
      return c * ((2.0 * x - xs) / sq - 2.0 * x * x * x * x * (x - xs) / (q * sq));
    };
    m.v1_inf_minus = m.v1_inf_plus = c;
  } else if (p.family == "parabolic") {
    // test family: bare parabola well, no limits at infinity
    m.v1 = [c, xs](Complex x) { return c * x * (x - xs); };
    m.v1p = [c, xs](Complex x) { return c * (2.0 * x - xs); };
    m.v1_inf_minus = m.v1_inf_plus = std::numeric_limits<double>::infinity();
  } else {
    throw MisuseError("model: unknown family '" + p.family + "'");
  }
  m.v2 = [t2](Complex x) { return -t2 * x / std::sqrt(1.0 + x * x); };
  m.v2p = [t2](Complex x) {
    const Complex q = 1.0 + x * x;
    return -t2 / (q * std::sqrt(q));
  };
  m.v2_inf_minus = t2;
  m.v2_inf_plus = -t2;

  const double r0c = p.r0bar, r1c = p.r1bar;
  m.r0 = [r0c](Complex) { return Complex(r0c, 0.0); };
  if (p.r1_gaussian) {
    m.r1 = [r1c](Complex x) { return r1c * std::exp(-x * x); };
    m.r1p = [r1c](Complex x) { return -2.0 * x * r1c * std::exp(-x * x); };
  } else {
    m.r1 = [r1c](Complex) { return Complex(r1c, 0.0); };
    m.r1p = [](Complex) { return Complex(0.0, 0.0); };
  }
  m.delta0 = 0.3;
  return m;
}

CrossingModel default_model() { return make_model(ModelParams{}); }

DistortionContour auto_contour(const CrossingModel& model, double h, double c0) {
  DistortionContour c;
  c.theta = 0.3;
  c.x_inf = 1.0;
  c.l_left = 6.0;
  // channel-2 decay rate along the ray is ~ sqrt(Re E - v2_inf_plus) sin(theta);
  // 45 e-foldings push the truncation error below 1e-18.
  const double q_min = std::sqrt(std::max(0.05, -model.v2_inf_plus - c0 * std::cbrt(h * h)));
  c.l_right = std::max(1.0, 45.0 * h / (q_min * std::sin(c.theta)));
  return c;
}

std::vector<PathSample> contour_points(const DistortionContour& c, int n) {
  if (n < 2) throw MisuseError("contour_points: need n >= 2");
  std::vector<PathSample> out;
  out.reserve(n);
  const double total = c.total_length();
  const double s_corner = c.l_left + c.x_inf;
  const Complex ray_dir = std::polar(1.0, c.theta);
  for (int i = 0; i < n; ++i) {
    const double s = total * i / (n - 1);
    PathSample p;
    p.s = s;
    if (s <= s_corner) {
      p.x = Complex(-c.l_left + s, 0.0);
      p.dxds = Complex(1.0, 0.0);
    } else {
      p.x = Complex(c.x_inf, 0.0) + (s - s_corner) * ray_dir;
      p.dxds = ray_dir;
    }
    out.push_back(p);
  }
  return out;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool ValidationReport::thm2_admissible() const {
  for (const auto& c : checks)
    if (c.assumption == "thm2-precondition") return c.pass;
  return false;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.assumption;
    if (!c.detail.empty()) os << ": " << c.detail;
    if (!c.pass && std::isfinite(c.witness)) os << " (witness x = " << c.witness << ")";
    os << "\n";
  }
  return os.str();
}

ValidationReport validate(const CrossingModel& m) {
  ValidationReport rep;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto add = [&](const std::string& name, bool pass, const std::string& detail,
                 double witness = std::numeric_limits<double>::quiet_NaN()) {
    rep.checks.push_back({name, pass, detail, pass ? nan : witness});
  };

  // crossing data
  const double v10 = m.v1_real(0.0), v20 = m.v2_real(0.0), v1s = m.v1_real(m.xstar);
  add("crossing at origin", std::abs(v10) < 1e-12 && std::abs(v20) < 1e-12,
      "v1(0), v2(0) vanish", 0.0);
  add("zero of v1 at xstar", std::abs(v1s) < 1e-12, "v1(xstar) vanishes", m.xstar);

  // slopes, validated by finite differences against the hand-coded derivatives
  const double d1 = fd_derivative(m.v1, 0.0), d2 = fd_derivative(m.v2, 0.0);
  add("slope tau1", std::abs(d1 - m.tau1) < kFdCheckTol && m.tau1 > 0.0,
      "v1'(0) = tau1 > 0", 0.0);
  add("slope tau2", std::abs(d2 + m.tau2) < kFdCheckTol && m.tau2 > 0.0,
      "v2'(0) = -tau2 < 0", 0.0);
  const double d1s = fd_derivative(m.v1, m.xstar);
  add("v1 decreasing at xstar", d1s < 0.0, "v1'(xstar) < 0", m.xstar);
  const double dd1 = std::abs(m.v1p(Complex(0.3, 0)).real() - fd_derivative(m.v1, 0.3));
  const double dd2 = std::abs(m.v2p(Complex(0.3, 0)).real() - fd_derivative(m.v2, 0.3));
  add("hand-coded derivatives", dd1 < kFdCheckTol && dd2 < kFdCheckTol,
      "v1', v2' match finite differences", 0.3);

  // sign pattern on a grid
  bool sign_ok = true;
  double sign_witness = nan;
  for (int i = 1; i <= 400; ++i) {
    const double x = -8.0 + 12.0 * i / 400.0;
    if (std::abs(x) < 1e-3 || std::abs(x - m.xstar) < 1e-3) continue;
    const double a = m.v1_real(x), b = m.v2_real(x);
    bool ok;
    if (x < m.xstar) ok = a > 0.0 && b > 0.0;
    else if (x < 0.0) ok = a < 0.0 && b > 0.0;
    else ok = a > 0.0 && b < 0.0;
    if (!ok) {
      sign_ok = false;
      sign_witness = x;
      break;
    }
  }
  add("sign pattern", sign_ok, "v1, v2 signs on the three intervals", sign_witness);

  // limits
  const bool lim_ok = m.v1_real(-1e4) > 0.0 && m.v1_real(1e4) > 0.0 &&
                      m.v2_real(-1e4) > 0.0 && m.v2_real(1e4) < 0.0;
  add("limits at infinity", lim_ok, "v1 -> +, +; v2 -> +, -", 1e4);

  // interaction reality on the real axis
  bool real_ok = true;
  double real_witness = nan;
  for (int i = 0; i <= 40; ++i) {
    const double x = -4.0 + 8.0 * i / 40.0;
    if (std::abs(m.r0(Complex(x, 0)).imag()) > 1e-14 ||
        std::abs(m.r1(Complex(x, 0)).imag()) > 1e-14) {
      real_ok = false;
      real_witness = x;
      break;
    }
  }
  add("interaction real on axis", real_ok, "r0, r1 real-valued", real_witness);

  // not an assumption failure, but downstream thm2 formulas need r0 == 0
  bool r0_zero = true;
  double r0_witness = nan;
  for (int i = 0; i <= 40; ++i) {
    const double x = -4.0 + 8.0 * i / 40.0;
    if (std::abs(m.r0(Complex(x, 0))) > 0.0) {
      r0_zero = false;
      r0_witness = x;
      break;
    }
  }
  add("thm2-precondition", r0_zero,
      r0_zero ? "r0 identically zero" : "thm2 formulas require r0 == 0", r0_witness);

  return rep;
}

double contour_decay_margin(const CrossingModel& m, const DistortionContour& c,
                            Complex e, int n_samples) {
  // cumulative Im int sqrt(E - v2) along the ray, trapezoid rule with a
  // branch kept continuous from the principal value at the corner
  const Complex dir = std::polar(1.0, c.theta);
  Complex prev_sqrt = std::sqrt(e - m.v2(Complex(c.x_inf, 0.0)));
  double im_acc = 0.0, min_im = 0.0;
  double ds = c.l_right / n_samples;
  for (int i = 1; i <= n_samples; ++i) {
    const Complex x = Complex(c.x_inf, 0.0) + (ds * i) * dir;
    Complex s = std::sqrt(e - m.v2(x));
    if ((s * std::conj(prev_sqrt)).real() < 0.0) s = -s;  // stay on the same branch
    im_acc += 0.5 * ((prev_sqrt + s) * dir * ds).imag();
    min_im = std::min(min_im, im_acc);
    prev_sqrt = s;
  }
  return min_im;
}

}  // namespace resolab
