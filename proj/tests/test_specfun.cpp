#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_airy.hpp"
#include "resolab/airy.hpp"
#include "resolab/errors.hpp"

using namespace resolab;
using resolab_tests::airy_oracle;

namespace {

// spec accuracy gauge: relative 1e-12, or absolute 1e-14 below 1e-2
bool within_gauge(double got, double ref) {
  const double err = std::abs(got - ref);
  if (std::abs(ref) >= 1e-2) return err <= 1e-12 * std::abs(ref);
  return err <= 1e-14;
}

}  // namespace

TEST_CASE("closed-form values at the origin") {
  const AiryValue v = airy_eval(0.0);
  // 3^{-2/3}/Gamma(2/3) and -3^{-1/3}/Gamma(1/3)
  CHECK(std::abs(v.ai - 0.3550280538878172) < 1e-15);
  CHECK(std::abs(v.aip - (-0.2588194037928068)) < 1e-15);
  CHECK(std::abs(v.bi - 0.6149266274460007) < 1e-15);
  CHECK(std::abs(v.bip - 0.4482883573538264) < 1e-15);
  const auto o = airy_oracle(0.0);
  CHECK(std::abs(v.ai - o.ai) < 1e-13);
  CHECK(std::abs(v.aip - o.aip) < 1e-13);
  CHECK(std::abs(v.bi - o.bi) < 1e-13);
}

TEST_CASE("series oracle across all evaluation regimes") {
  // covers: direct series, the anchored Taylor bridges on both sides, and
  // both asymptotic branches
  const double grid[] = {-50.0, -43.7, -28.1, -14.6, -9.5, -9.0, -8.75, -7.3, -6.1, -5.2,
                         -4.4,  -4.0,  -3.3,  -2.5,  -1.1, -0.4, 0.0,   0.3,  1.7,  2.9,
                         4.1,   4.5,   5.3,   6.7,   7.4,  8.2,  8.9,   9.0,  10.6, 13.8,
                         16.9,  20.0};
  for (double x : grid) {
    CAPTURE(x);
    const AiryValue v = airy_eval(x);
    const auto o = airy_oracle(x);
    CHECK(within_gauge(v.ai, o.ai));
    CHECK(within_gauge(v.aip, o.aip));
    CHECK(within_gauge(v.bi, o.bi));
    CHECK(within_gauge(v.bip, o.bip));
  }
}

TEST_CASE("wronskian identity on a dense grid") {
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -20.0 + 28.0 * i / 2000.0;
    const AiryValue v = airy_eval(x);
    worst = std::max(worst, std::abs(v.ai * v.bip - v.aip * v.bi - M_1_PI));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("values satisfy the differential equation") {
  // second difference of ai reproduces x*ai to O(grid^2)
  const double dx = 1e-3;
  for (double x : {-6.3, -2.0, 0.7, 3.9, 7.5}) {
    const double num2 =
        (airy_eval(x + dx).ai - 2.0 * airy_eval(x).ai + airy_eval(x - dx).ai) / (dx * dx);
    CHECK(std::abs(num2 - x * airy_eval(x).ai) < 1e-4 * (1.0 + std::abs(x)));
  }
}

TEST_CASE("positivity and monotonicity on the positive axis") {
  double prev = airy_eval(0.0).ai;
  for (double x = 0.25; x <= 12.0; x += 0.25) {
    const AiryValue v = airy_eval(x);
    CHECK(v.ai > 0.0);
    CHECK(v.ai < prev);
    CHECK(v.bi > 0.0);
    prev = v.ai;
  }
}

TEST_CASE("oscillation envelope on the negative axis") {
  // |Ai(-x)| and |Bi(-x)| bounded by ~ pi^{-1/2} x^{-1/4} within factor 1.1
  for (double x = 2.0; x <= 40.0; x += 0.37) {
    const AiryValue v = airy_eval(-x);
    const double env = 1.1 / (std::sqrt(M_PI) * std::pow(x, 0.25));
    CHECK(std::abs(v.ai) < env);
    CHECK(std::abs(v.bi) < env);
    // and the modulus stays near the envelope (phase-independent check)
    const double mod = std::sqrt(v.ai * v.ai + v.bi * v.bi);
    CHECK(mod > env / 1.21);
    CHECK(mod < env);
  }
}

TEST_CASE("scaled tails agree with direct evaluation") {
  for (double x : {4.0, 5.5, 8.0, 10.0, 14.9, 15.1, 20.0}) {
    const auto [la, lb] = airy_scaled_tail(x);
    const AiryValue v = airy_eval(x);
    CHECK(std::abs(la - std::log(v.ai)) < 1e-10 * std::abs(la));
    CHECK(std::abs(lb - std::log(v.bi)) < 1e-10 * std::abs(lb));
  }
}

TEST_CASE("scaled tail leading asymptotics") {
  const double x = 1e4;
  const auto [la, lb] = airy_scaled_tail(x);
  const double lead =
      -2.0 / 3.0 * std::pow(x, 1.5) - 0.25 * std::log(x) - std::log(2.0 * std::sqrt(M_PI));
  CHECK(std::abs(la - lead) < 1e-3 * std::abs(lead));
  CHECK(lb > 0.0);  // Bi grows
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(airy_scaled_tail(3.999), RangeError);
  CHECK_THROWS_AS(airy_eval(-201.0), RangeError);
  CHECK_THROWS_AS(airy_eval(101.0), RangeError);
}
