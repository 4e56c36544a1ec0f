#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_shooting.hpp"
#include "resolab/errors.hpp"
#include "resolab/finder.hpp"

using namespace resolab;
using resolab_tests::NumerovOracle;

namespace {

struct Fixture {
  CrossingModel model;
  ActionData acts;

  explicit Fixture(ModelParams p = {}) : model(make_model(p)), acts(action_derivatives(model)) {}
};

}  // namespace

TEST_CASE("decoupled resonances are real and match the shooting oracle") {
  Fixture fx({.r1bar = 0.0});
  const double h = 0.04;
  const auto contour = auto_contour(fx.model, h, 1.0);
  ResonanceFinder finder(fx.model, contour, fx.acts);
  const FinderResult res = finder.find_resonances(h, 1.0);
  const KRange kr = k_window(fx.acts, h, 1.0);
  CHECK(static_cast<int>(res.resonances.size()) == kr.size());
  CHECK(res.issues.empty());

  const NumerovOracle oracle(fx.model, h);
  const double h23 = h_pow_23(h);
  const auto eigs = oracle.eigenvalues(-1.3 * h23, 1.3 * h23);
  for (const Resonance& r : res.resonances) {
    CHECK(std::abs(r.e.imag()) < 1e-10);
    double best = 1e300;
    for (double e : eigs) best = std::min(best, std::abs(r.e.real() - e));
    CHECK(best < 1e-8 * std::abs(r.e.real()));
  }
}

TEST_CASE("count, window and found resonances agree") {
  Fixture fx;
  const double h = 0.05;
  const auto contour = auto_contour(fx.model, h, 1.0);
  ResonanceFinder finder(fx.model, contour, fx.acts);
  const FinderResult res = finder.find_resonances(h, 1.0);
  const int count = finder.count_zeros(h, 1.0);
  const KRange kr = k_window(fx.acts, h, 1.0);
  CHECK(count == kr.size());
  CHECK(static_cast<int>(res.resonances.size()) == kr.size());
  // widths all in the lower half plane
  for (const auto& r : res.resonances) CHECK(r.e.imag() <= 0.0);
  // k labels ascend with Re E and zeros stay a full spacing apart
  for (size_t i = 0; i + 1 < res.resonances.size(); ++i) {
    CHECK(res.resonances[i].k < res.resonances[i + 1].k);
    const double gap = res.resonances[i + 1].rho.real() - res.resonances[i].rho.real();
    CHECK(gap > 0.5 * M_PI * h_pow_13(h) / fx.acts.a1);
  }
}

TEST_CASE("seed proximity to the predictions") {
  Fixture fx;
  const SlopePair sl(fx.model.tau1, fx.model.tau2);
  for (double h : {0.08, 0.04}) {
    const auto contour = auto_contour(fx.model, h, 1.0);
    ResonanceFinder finder(fx.model, contour, fx.acts);
    const KRange kr = k_window(fx.acts, h, 1.0);
    const int kc = (kr.lo + kr.hi) / 2;
    const Resonance pred = predict_thm2(fx.model, fx.acts, sl, h, kc);
    const Resonance z = finder.refine(pred.rho, h, kc);
    CHECK(std::abs(z.e.real() - pred.e.real()) < 2.0 * h * h);
    CHECK(std::abs(z.e.imag() - pred.e.imag()) < 2.0 * std::pow(h, 8.0 / 3.0));
  }
}

TEST_CASE("refinement is idempotent") {
  Fixture fx;
  const double h = 0.05;
  const auto contour = auto_contour(fx.model, h, 1.0);
  ResonanceFinder finder(fx.model, contour, fx.acts);
  const SlopePair sl(fx.model.tau1, fx.model.tau2);
  const KRange kr = k_window(fx.acts, h, 1.0);
  const int kc = (kr.lo + kr.hi) / 2;
  const Resonance z1 = finder.refine(predict_thm2(fx.model, fx.acts, sl, h, kc).rho, h, kc);
  const Resonance z2 = finder.refine(z1.rho, h, kc);
  CHECK(std::abs(z2.rho - z1.rho) < 1e-13);
}

TEST_CASE("iteration starvation is reported, not swallowed") {
  Fixture fx;
  const double h = 0.06;
  FinderOptions opts;
  opts.muller_max_iter = 1;
  const auto contour = auto_contour(fx.model, h, 1.0);
  ResonanceFinder finder(fx.model, contour, fx.acts, opts);
  const FinderResult res = finder.find_resonances(h, 1.0);
  CHECK(!res.issues.empty());
  for (const auto& issue : res.issues) CHECK(issue.what == "no-convergence");
}

TEST_CASE("empty window counts zero") {
  Fixture fx;
  const double h = 0.05;
  // c0 small enough that no lambda_k falls inside
  double c0 = 0.02;
  while (k_window(fx.acts, h, c0).size() > 0) c0 *= 0.5;
  const auto contour = auto_contour(fx.model, h, 1.0);
  ResonanceFinder finder(fx.model, contour, fx.acts);
  CHECK(finder.count_zeros(h, c0) == 0);
  CHECK(finder.find_resonances(h, c0).resonances.empty());
}

TEST_CASE("seedless search finds the same set") {
  Fixture fx;
  const double h = 0.06;
  const auto contour = auto_contour(fx.model, h, 1.0);
  ResonanceFinder finder(fx.model, contour, fx.acts);
  const FinderResult seeded = finder.find_resonances(h, 1.0);
  const FinderResult global = finder.find_resonances_seedless(h, 1.0);
  REQUIRE(global.resonances.size() == seeded.resonances.size());
  for (size_t i = 0; i < global.resonances.size(); ++i) {
    CHECK(global.resonances[i].k == seeded.resonances[i].k);
    CHECK(std::abs(global.resonances[i].rho - seeded.resonances[i].rho) < 1e-9);
  }
}
