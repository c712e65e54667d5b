#include <doctest.h>

#include "oracles.hpp"

#include <saltice/critical_curves.hpp>
#include <saltice/rate_core.hpp>
#include <saltice/variational.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace saltice;

namespace {

const ModelParams canon{2, 0.8, 1.0, 1.0};
constexpr auto kPlus = BoundaryCondition::Plus;
constexpr auto kMinus = BoundaryCondition::Minus;

// b1(2) and the contact point m1(2), independent 40-digit solve
constexpr double kB1At2 = -1.5809121802257351;
constexpr double kM1At2 = -0.55235138122052472;
constexpr double kB2At2 = -1.778825740934155;

}  // namespace

TEST_CASE("trivial and endpoint minimizers") {
  const auto zero = minimize_q(canon, kPlus, {0, 0});
  REQUIRE(zero.multiplicity() == 1);
  CHECK(zero.minimizers[0] == 0.8);
  CHECK(zero.value == 0.0);
  CHECK(zero.kind == MinimizerKind::AtPlusEndpoint);

  const auto liquid = minimize_q(canon, kPlus, {0, 2});
  REQUIRE(liquid.multiplicity() == 1);
  CHECK(liquid.minimizers[0] == 0.8);
  CHECK(0.0 > kB1At2);

  const auto frozen = minimize_q(canon, kPlus, {-3, 2});
  REQUIRE(frozen.multiplicity() == 1);
  CHECK(frozen.minimizers[0] == -0.8);
  CHECK(frozen.kind == MinimizerKind::AtMinusEndpoint);
  CHECK(-3.0 < kB2At2);
}

TEST_CASE("interior minimizer between the curves increases with b") {
  const double mid = 0.5 * (kB1At2 + kB2At2);
  const auto r = convex_cell(canon, kPlus, 2.0);
  REQUIRE(r.has_value());
  double previous = -1.0;
  for (double b : {mid - 0.01, mid, mid + 0.01}) {
    const double m = m_plus(canon, {b, 2.0});
    CHECK(m > -0.8);
    CHECK(m < r->hi);
    const auto brute = oracle::grid_min(
        [&](double x) { return oracle::reduced(2, 0.8, 1, 1, true, b, 2.0, x); }, -0.8, 0.8);
    CHECK(std::fabs(m - brute.m) <= 1e-6);
    CHECK(m > previous);
    previous = m;
  }
}

TEST_CASE("matches a brute-force grid scan at 200 random points") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ub(-4.0, 2.0), uxi(0.0, 5.0), ucoin(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const double b = ub(rng);
    const double xi = uxi(rng);
    const auto bc = ucoin(rng) < 0.5 ? kPlus : kMinus;
    const auto set = minimize_q(canon, bc, {b, xi});
    const auto brute = oracle::grid_min(
        [&](double x) { return oracle::reduced(2, 0.8, 1, 1, bc == kPlus, b, xi, x); }, -0.8, 0.8);
    CHECK(std::fabs(set.value - (brute.value)) <= 1e-9);
    const double nearest = *std::min_element(
        set.minimizers.begin(), set.minimizers.end(),
        [&](double a, double c) { return std::fabs(a - brute.m) < std::fabs(c - brute.m); });
    CHECK(std::fabs(nearest - brute.m) <= 1e-6);
    CHECK(std::is_sorted(set.minimizers.begin(), set.minimizers.end()));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("largest minimizer is nondecreasing in b") {
  for (auto bc : {kPlus, kMinus}) {
    for (double xi : {0.5, 1.5, 2.5, 4.0}) {
      double previous = -1.0;
      for (double b = -4.0; b <= 2.0; b += 0.01) {
        const auto set = minimize_q(canon, bc, {b, xi});
        CHECK(set.minimizers.back() >= previous - 1e-12);
        previous = set.minimizers.back();
      }
    }
  }
}

TEST_CASE("jump at b1 and continuity at b2") {
  for (double xi : {1.5, 2.0, 3.0, 6.0}) {
    const double b1 = b1_plus(canon, xi);
    const double b2 = b2_plus(canon, xi);
    const double eps = 1e-7;
    const auto cell = convex_cell(canon, kPlus, xi);
    REQUIRE(cell.has_value());
    const double jump = m_plus(canon, {b1 + eps, xi}) - m_plus(canon, {b1 - eps, xi});
    CHECK(jump >= (0.8 - cell->hi) - 1e-6);
    CHECK(m_plus(canon, {b2 + eps, xi}) + 0.8 < 1e-4);
    CHECK(m_plus(canon, {b2 - eps, xi}) == -0.8);
  }
}

TEST_CASE("on-curve points report every minimizer") {
  const auto set = minimize_q(canon, kPlus, {kB1At2, 2.0});
  REQUIRE(set.multiplicity() == 2);
  CHECK(set.kind == MinimizerKind::Degenerate);
  CHECK(set.minimizers[0] == doctest::Approx(kM1At2).epsilon(1e-7));
  CHECK(set.minimizers[1] == 0.8);
  CHECK_THROWS_AS(m_plus(canon, {b1_plus(canon, 2.0), 2.0}), MultipleMinimizers);
  try {
    m_plus(canon, {b1_plus(canon, 2.0), 2.0});
  } catch (const MultipleMinimizers& e) {
    CHECK(e.minimizers().multiplicity() == 2);
  }

  // Below xi_t the two endpoints tie on the coincident curve.
  const double b = b2_plus(canon, 0.5);
  const auto tie = minimize_q(canon, kPlus, {b, 0.5});
  REQUIRE(tie.multiplicity() == 2);
  CHECK(tie.minimizers[0] == -0.8);
  CHECK(tie.minimizers[1] == 0.8);
}

TEST_CASE("kind names") {
  CHECK(to_string(MinimizerKind::Interior) == "interior");
  CHECK(to_string(MinimizerKind::AtPlusEndpoint) == "at_plus_endpoint");
  CHECK(to_string(MinimizerKind::AtMinusEndpoint) == "at_minus_endpoint");
  CHECK(to_string(MinimizerKind::Degenerate) == "degenerate");
}
