#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "resolab/airy.hpp"
#include "resolab/asymptotics.hpp"
#include "resolab/errors.hpp"

using namespace resolab;

namespace {

ActionData unit_actions() {
  ActionData a;
  a.a0 = 1.0;
  a.a1 = 1.0;
  a.a2 = 0.0;
  a.a3 = 0.0;
  a.e_min = -1.0;
  a.e_max = 1.0;
  return a;
}

}  // namespace

TEST_CASE("lambda_k arithmetic") {
  const ActionData a = unit_actions();
  const double h = 1e-3;
  // (318.5 pi 1e-3 - 1) / 1e-2 = 0.059726...
  CHECK(lambda_k(a, h, 318) == doctest::Approx((318.5 * M_PI * 1e-3 - 1.0) / 1e-2).epsilon(1e-12));
  CHECK(lambda_k(a, h, 318) == doctest::Approx(0.05973).epsilon(2e-4));
  // lambda vanishes when (k+1/2) pi h = a0
  const double h0 = 1.0 / (M_PI * 12.5);
  CHECK(std::abs(lambda_k(a, h0, 12)) < 1e-13);
  // spacing
  const double sp = lambda_k(a, h, 101) - lambda_k(a, h, 100);
  CHECK(sp == doctest::Approx(M_PI * h / std::cbrt(h * h)).epsilon(1e-13));
}

TEST_CASE("k window inversion") {
  const ActionData a = unit_actions();
  const double h = 1e-3;
  const KRange kr = k_window(a, h, 1.0);
  CHECK(kr.lo == static_cast<int>(std::ceil((1.0 - 1e-2) / (M_PI * h) - 0.5)));
  CHECK(kr.hi == static_cast<int>(std::floor((1.0 + 1e-2) / (M_PI * h) - 0.5)));
  // every member inside, neighbours outside
  for (int k = kr.lo; k <= kr.hi; ++k) CHECK(std::abs(lambda_k(a, h, k)) <= 1.0);
  CHECK(std::abs(lambda_k(a, h, kr.lo - 1)) > 1.0);
  CHECK(std::abs(lambda_k(a, h, kr.hi + 1)) > 1.0);
  // window size tracks the spacing formula within one
  const int expect = static_cast<int>(std::floor(2.0 * a.a1 / (M_PI * std::cbrt(h))));
  CHECK(std::abs(kr.size() - expect) <= 1);
  // h -> 0 growth like h^{-1/3}
  CHECK(k_window(a, h / 8.0, 1.0).size() ==
        doctest::Approx(2.0 * kr.size()).epsilon(0.1));
}

TEST_CASE("resonance stores rho and e consistently") {
  const Resonance r = Resonance::from_rho(3, {0.25, -0.5}, 0.02, Provenance::thm2);
  CHECK(r.e == r.rho * h_pow_23(0.02));
  const Resonance r2 = Resonance::from_e(3, r.e, 0.02, Provenance::numeric);
  CHECK(std::abs(r2.rho - r.rho) < 1e-15);
  CHECK(std::string(provenance_name(Provenance::reduced)) == "reduced");
}

TEST_CASE("thm1 prediction structure") {
  const CrossingModel m = make_model({.r0bar = 0.0, .r1bar = 1.0});
  const ActionData a = unit_actions();
  const SlopePair sl(m.tau1, m.tau2);
  // r0 = 0 kills the h^{5/3} width
  const Resonance r = predict_thm1(m, a, sl, 0.01, 31);
  CHECK(r.e.imag() == 0.0);
  // lambda_k = 0 gives Re E = 0 for the two-term part
  const double h0 = 1.0 / (M_PI * 24.5);  // (k+1/2) pi h = a0 = 1 at k = 24
  CHECK(std::abs(lambda_k(a, h0, 24)) < 1e-14);
  CHECK(std::abs(predict_thm1(m, a, sl, h0, 24).e.real()) < 1e-14);

  // wiring against a direct transcription
  const CrossingModel mc = make_model({.r0bar = 0.5, .r1bar = 0.0});
  const double h = 0.02;
  const int k = 15;  // lambda_15 = -0.35 with these actions
  const Resonance p = predict_thm1(mc, a, sl, h, k);
  const double lam = lambda_k(a, h, k);
  const double mu1 = mu(1, lam, sl), mu2 = mu(2, lam, sl);
  const double im_expected = -2.0 * M_PI * M_PI * 0.25 / a.a1 *
                             std::cbrt(sl.tau1 * sl.tau2) * (mu1 * mu1 + mu2 * mu2) *
                             std::pow(h, 5.0 / 3.0);
  CHECK(p.e.imag() == doctest::Approx(im_expected).epsilon(1e-12));
}

TEST_CASE("thm2 prediction structure") {
  const CrossingModel m = default_model();
  const ActionData a = unit_actions();
  const SlopePair sl(1.0, 1.0);
  CHECK(sl.tau3 == doctest::Approx(0.5));

  // width vanishes at zeros of Ai'
  const double ap1 = 1.0187929716474714;  // first zero of Ai' (negated)
  ActionData az = a;
  const double h = 0.01;
  // choose k so lambda lands exactly on the zero: lambda = ap1 * tau3^{2/3}
  // by tuning a0 instead of hunting for k
  const int k = 40;
  const double lam_target = ap1 * std::cbrt(sl.tau3 * sl.tau3);
  az.a0 = (k + 0.5) * M_PI * h - lam_target * std::cbrt(h * h);
  const Resonance r = predict_thm2(m, az, sl, h, k);
  CHECK(std::abs(lambda_k(az, h, k) - lam_target) < 1e-12);
  CHECK(std::abs(r.e.imag()) < 1e-18);

  // r1 = 0 kills the width entirely
  const CrossingModel m0 = make_model({.r1bar = 0.0});
  CHECK(predict_thm2(m0, a, sl, h, k).e.imag() == 0.0);

  // scalar coupling violates the precondition, named in the error
  const CrossingModel mbad = make_model({.r0bar = 0.3});
  CHECK_THROWS_AS(predict_thm2(mbad, a, sl, h, k), MisuseError);
  CHECK_THROWS_AS(predict_reduced(mbad, a, sl, h, k), MisuseError);
}

TEST_CASE("thm2 real part extends thm1 by the cubic term") {
  const CrossingModel m = default_model();
  ActionData a = unit_actions();
  a.a2 = 0.7;
  a.a3 = 1.9;
  const SlopePair sl(1.0, 1.0);
  for (double h : {0.05, 0.02}) {
    const int k0 = static_cast<int>(a.a0 / (M_PI * h) - 0.5);  // lambda near 0
    for (int k : {k0, k0 + 1}) {
      const double lam = lambda_k(a, h, k);
      const double r1re = predict_thm1(m, a, sl, h, k).e.real();
      const double r2re = predict_thm2(m, a, sl, h, k).e.real();
      const double cubic = -(a.a3 / (6.0 * a.a1)) * lam * lam * lam * h * h;
      // shared code path: the difference is the cubic term to ulp level
      CHECK(std::abs((r2re - r1re) - cubic) <=
            8.0 * 1.1e-16 * (std::abs(r1re) + std::abs(cubic)));
    }
  }
}

TEST_CASE("im_g equals the closed-form product") {
  const CrossingModel m = default_model();
  const SlopePair sl(1.0, 1.0);
  for (double rho : {-0.8, 0.0, 0.9}) {
    const double g = im_g(m, sl, rho);
    const double aip = airy_eval(-rho / std::cbrt(sl.tau3 * sl.tau3)).aip;
    const double closed = M_PI * M_PI * std::cbrt(sl.tau3) / (sl.tau1 + sl.tau2) * aip * aip;
    CHECK(std::abs(g - closed) < 1e-8);
  }
  // rho = 0 value in closed form: pi^2 2^{-4/3} Ai'(0)^2
  const double expected = M_PI * M_PI * std::pow(2.0, -4.0 / 3.0) * 0.2588194037928068 *
                          0.2588194037928068;
  CHECK(std::abs(im_g(m, sl, 0.0) - expected) < 1e-8);
  const CrossingModel m0 = make_model({.r1bar = 0.0});
  CHECK(im_g(m0, sl, 0.0) == 0.0);
}

TEST_CASE("reduced prediction hits the quantization exactly") {
  const CrossingModel m = default_model();
  const ActionData a = action_derivatives(m);
  const SlopePair sl(m.tau1, m.tau2);
  for (double h : {0.04, 0.02}) {
    const KRange kr = k_window(a, h, 1.0);
    for (int k : {kr.lo, (kr.lo + kr.hi) / 2, kr.hi}) {
      const Resonance r = predict_reduced(m, a, sl, h, k);
      const double q = action(m, r.e.real()) / (M_PI * h) - 0.5;
      CHECK(std::abs(q - std::lround(q)) < 1e-12);
      // width route agrees with the closed-form route
      const Resonance t2 = predict_thm2(m, a, sl, h, k);
      CHECK(std::abs(r.e.imag() - t2.e.imag()) < 1e-6 * std::abs(t2.e.imag()));
      // exact root vs two-term expansion differ at order h^2
      const Resonance t1 = predict_thm1(m, a, sl, h, k);
      CHECK(std::abs(r.e.real() - t1.e.real()) < 2.0 * h * h);
    }
  }
}

TEST_CASE("predictions stay inside the search box") {
  const CrossingModel m = default_model();
  const ActionData a = action_derivatives(m);
  const SlopePair sl(m.tau1, m.tau2);
  for (double h : {0.08, 0.02}) {
    const KRange kr = k_window(a, h, 1.0);
    for (int k = kr.lo; k <= kr.hi; ++k) {
      const Resonance r = predict_thm2(m, a, sl, h, k);
      CHECK(std::abs(r.rho.real()) < 1.0 + 0.5 * M_PI * h_pow_13(h) / a.a1);
      CHECK(r.rho.imag() <= 0.0);
      CHECK(r.rho.imag() > -1.0 * h_pow_13(h));
    }
  }
}
