#ifndef RESOLAB_TESTS_ORACLE_SHOOTING_HPP
#define RESOLAB_TESTS_ORACLE_SHOOTING_HPP

// Single-channel eigenvalue oracle for h^2 D^2 + v1 on the real line:
// Numerov integration from both ends, log-derivative mismatch at the well
// bottom, bisection on sign changes.  Shares nothing with the contour
// solver (different discretization, real arithmetic, no WKB input).

#include <cmath>
#include <vector>

#include "resolab/model.hpp"

namespace resolab_tests {

class NumerovOracle {
public:
  NumerovOracle(const resolab::CrossingModel& m, double h, double xa = -6.0, double xb = 2.0,
                double match = -0.5)
      : m_(m), h_(h), xa_(xa), xb_(xb), match_(match) {}

  double mismatch(double e) const {
    const double dx = h_ / 60.0;
    const int n = static_cast<int>((xb_ - xa_) / dx) + 1;
    const double d = (xb_ - xa_) / (n - 1);
    auto q = [&](double x) { return (e - m_.v1_real(x)) / (h_ * h_); };
    const int im = static_cast<int>((match_ - xa_) / d);
    std::vector<double> ul(n, 0.0), ur(n, 0.0);
    const double c = d * d / 12.0;
    ul[1] = 1e-30;
    for (int i = 1; i <= im; ++i) {
      ul[i + 1] = (2.0 * (1.0 - 5.0 * c * q(xa_ + i * d)) * ul[i] -
                   (1.0 + c * q(xa_ + (i - 1) * d)) * ul[i - 1]) /
                  (1.0 + c * q(xa_ + (i + 1) * d));
      if (std::abs(ul[i + 1]) > 1e200)
        for (int j = 0; j <= i + 1; ++j) ul[j] *= 1e-200;
    }
    ur[n - 2] = 1e-30;
    for (int i = n - 2; i >= im; --i) {
      ur[i - 1] = (2.0 * (1.0 - 5.0 * c * q(xa_ + i * d)) * ur[i] -
                   (1.0 + c * q(xa_ + (i + 1) * d)) * ur[i + 1]) /
                  (1.0 + c * q(xa_ + (i - 1) * d));
      if (std::abs(ur[i - 1]) > 1e200)
        for (int j = i - 1; j < n; ++j) ur[j] *= 1e-200;
    }
    const double dul = (ul[im + 1] - ul[im - 1]) / (2 * d);
    const double dur = (ur[im + 1] - ur[im - 1]) / (2 * d);
    const double nl = std::sqrt(ul[im] * ul[im] + h_ * h_ * dul * dul);
    const double nr = std::sqrt(ur[im] * ur[im] + h_ * h_ * dur * dur);
    return (dul * ur[im] - ul[im] * dur) / (nl * nr);
  }

  // all eigenvalues in (e_lo, e_hi), located by sign scanning + bisection
  std::vector<double> eigenvalues(double e_lo, double e_hi, int n_scan = 80) const {
    std::vector<double> out;
    double f0 = mismatch(e_lo);
    for (int i = 1; i <= n_scan; ++i) {
      const double e = e_lo + (e_hi - e_lo) * i / n_scan;
      const double f1 = mismatch(e);
      if ((f0 > 0) != (f1 > 0)) {
        double a = e_lo + (e_hi - e_lo) * (i - 1) / n_scan, b = e, fa = f0;
        for (int it = 0; it < 120; ++it) {
          const double mid = 0.5 * (a + b);
          const double fm = mismatch(mid);
          if ((fm > 0) == (fa > 0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
          if (b - a < 1e-14) break;
        }
        out.push_back(0.5 * (a + b));
      }
      f0 = f1;
    }
    return out;
  }

private:
  const resolab::CrossingModel& m_;
  double h_, xa_, xb_, match_;
};

}  // namespace resolab_tests

#endif
