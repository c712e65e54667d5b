#include <doctest.h>

#include "oracles.hpp"

#include <saltice/rate_core.hpp>

#include <cmath>
#include <stdexcept>

using namespace saltice;

namespace {

const ModelParams canon{2, 0.8, 1.0, 1.0};
const ModelParams ice{2, 0.98, 1.0, 4.0};
constexpr auto kPlus = BoundaryCondition::Plus;
constexpr auto kMinus = BoundaryCondition::Minus;

}  // namespace

TEST_CASE("params validation") {
  CHECK_NOTHROW(canon.validate());
  CHECK_THROWS_AS((ModelParams{1, 0.8, 1, 1}.validate()), std::domain_error);
  CHECK_THROWS_AS((ModelParams{2, 1.0, 1, 1}.validate()), std::domain_error);
  CHECK_THROWS_AS((ModelParams{2, 0.8, 0, 1}.validate()), std::domain_error);
  CHECK_THROWS_AS((ModelParams{2, 0.8, 1, 0}.validate()), std::domain_error);
  CHECK(parse_boundary_condition("ice") == kMinus);
  CHECK(parse_boundary_condition("plus") == kPlus);
  CHECK_THROWS_AS(parse_boundary_condition("up"), std::invalid_argument);
}

TEST_CASE("salt potential values") {
  CHECK(std::fabs(salt_potential(canon, -1.0) - (0.0)) <= 1e-15);
  CHECK(salt_potential(canon, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(salt_potential(canon, 0.8) == doctest::Approx(0.934701664001166).epsilon(1e-13));
  CHECK(salt_potential(canon, 0.8, 1) == doctest::Approx(0.337387219166386).epsilon(1e-13));
  CHECK(salt_potential(canon, -0.8, 1) == doctest::Approx(0.733162870467077).epsilon(1e-13));
  CHECK(salt_potential(canon, 0.0) == doctest::Approx(std::log((1 + std::exp(1.0)) / 2)));
  CHECK_THROWS_AS(salt_potential(canon, 1.0001), std::domain_error);
  CHECK_THROWS_AS(salt_potential(canon, 0.1, 3), std::invalid_argument);
}

TEST_CASE("salt potential is strictly concave and derivatives match finite differences") {
  for (double kappa : {0.3, 1.0, 4.0}) {
    const ModelParams p{2, 0.8, 1.0, kappa};
    auto g = [&](double m) { return salt_potential(p, m); };
    for (double m = -0.95; m <= 0.95; m += 0.05) {
      const double g1 = salt_potential(p, m, 1);
      const double g2 = salt_potential(p, m, 2);
      CHECK(g2 < 0.0);
      CHECK(g2 == doctest::Approx(-g1 * g1).epsilon(1e-14));
      CHECK(g1 == doctest::Approx(oracle::d1(g, m)).epsilon(1e-6));
      CHECK(g2 == doctest::Approx(oracle::d1([&](double x) { return salt_potential(p, x, 1); }, m))
                      .epsilon(1e-6));
    }
  }
}

TEST_CASE("salt entropy") {
  CHECK(std::fabs(salt_entropy(0.0, 0.5) - (0.0)) <= 1e-15);
  CHECK(salt_entropy(0.0, 1.0) == doctest::Approx(-std::log(2.0)));
  CHECK(std::fabs(salt_entropy(0.5, 0.75) - (0.0)) <= 1e-15);
  CHECK(std::fabs(salt_entropy(1.0, 1.0) - (0.0)) <= 1e-15);
  CHECK_THROWS_AS(salt_entropy(-1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(salt_entropy(0.0, 1.5), std::domain_error);
}

TEST_CASE("optimal salt fraction") {
  CHECK(optimal_salt_fraction(canon, 1.0) == 1.0);
  CHECK(optimal_salt_fraction(canon, -1.0) == 0.0);
  CHECK(optimal_salt_fraction(canon, 0.0) == doctest::Approx(0.731058578630005).epsilon(1e-13));
  // Golden-section minimization of the joint rate over theta on a 50-point m grid.
  const ThermoPoint pt{0.3, 1.7};
  for (int i = 0; i < 50; ++i) {
    const double m = -0.79 + 1.58 * i / 49.0;
    const double theta = oracle::golden(
        [&](double t) { return oracle::joint(2, 0.8, 1, 1, true, pt.b, pt.xi, m, t); }, 0.0, 1.0, 1e-12);
    CHECK(std::fabs(optimal_salt_fraction(canon, m) - (theta)) <= 1e-8);
  }
}

TEST_CASE("droplet cost") {
  CHECK(droplet_cost(canon, kPlus, 0.8) == 0.0);
  CHECK(droplet_cost(canon, kPlus, -0.8) == doctest::Approx(1.0));
  CHECK(droplet_cost(canon, kMinus, -0.8) == 0.0);
  CHECK(droplet_cost(canon, kMinus, 0.8) == doctest::Approx(1.0));
  CHECK(droplet_cost(canon, kPlus, 0.0) == doctest::Approx(0.707106781186548).epsilon(1e-14));
  CHECK(droplet_cost(canon, kPlus, 0.8, 1) == -INFINITY);
  CHECK(droplet_cost(canon, kMinus, -0.8, 1) == INFINITY);
  CHECK(droplet_cost(canon, kPlus, 0.8, 2) == -INFINITY);
  CHECK_THROWS_AS(droplet_cost(canon, kPlus, 0.81), std::domain_error);

  for (double m = -0.75; m <= 0.75; m += 0.05) {
    CHECK(droplet_cost(canon, kPlus, m) == doctest::Approx(droplet_cost(canon, kMinus, -m)));
    CHECK(droplet_cost(canon, kPlus, m, 2) < 0.0);
    CHECK(droplet_cost(canon, kMinus, m, 2) < 0.0);
    for (auto bc : {kPlus, kMinus}) {
      auto f = [&](double x) { return droplet_cost(canon, bc, x); };
      auto f1 = [&](double x) { return droplet_cost(canon, bc, x, 1); };
      CHECK(droplet_cost(canon, bc, m, 1) == doctest::Approx(oracle::d1(f, m)).epsilon(1e-6));
      CHECK(droplet_cost(canon, bc, m, 2) == doctest::Approx(oracle::d1(f1, m)).epsilon(1e-6));
    }
  }
}

TEST_CASE("joint and reduced rate") {
  CHECK(std::fabs(joint_rate(canon, kPlus, {0, 0}, 0.8, 0.3) - (0.0)) <= 1e-15);
  CHECK(joint_rate(canon, kPlus, {0, 0}, -0.8, 0.0) == doctest::Approx(1.0));
  CHECK(reduced_rate(canon, kPlus, {0, 0}, 0.8) == 0.0);
  CHECK(reduced_rate(canon, kMinus, {1, 0}, -0.8) == doctest::Approx(0.8));
  CHECK(reduced_rate(canon, kPlus, {0, 2}, 0.0) == doctest::Approx(-0.533122232730008).epsilon(1e-13));

  // inf over theta at (m=0, xi=1, b=0)
  const double t = oracle::golden(
      [](double th) { return oracle::joint(2, 0.8, 1, 1, true, 0, 1, 0, th); }, 0, 1, 1e-12);
  CHECK(t == doctest::Approx(0.731058578630005).epsilon(1e-8));
  CHECK(joint_rate(canon, kPlus, {0, 1}, 0.0, t) ==
        doctest::Approx(0.707106781186548 - 0.620114506958278).epsilon(1e-12));
  CHECK(joint_rate(canon, kPlus, {0, 1}, 0.0, optimal_salt_fraction(canon, 0.0)) ==
        doctest::Approx(reduced_rate(canon, kPlus, {0, 1}, 0.0)).epsilon(1e-14));

  for (auto bc : {kPlus, kMinus}) {
    for (double m = -0.7; m <= 0.7; m += 0.1) {
      const ThermoPoint pt{-0.4, 1.3};
      auto f = [&](double x) { return reduced_rate(canon, bc, pt, x); };
      CHECK(reduced_rate(canon, bc, pt, m, 1) == doctest::Approx(oracle::d1(f, m)).epsilon(1e-6));
      CHECK(reduced_rate(canon, bc, pt, m, 2) == doctest::Approx(oracle::d2(f, m)).epsilon(1e-4));
    }
  }
}

TEST_CASE("energy profile and its tilt") {
  CHECK(energy_profile(canon, kPlus, 0.0, 0.8) == 0.0);
  CHECK(energy_profile(canon, kPlus, 2.0, 0.0) == doctest::Approx(-0.533122232730008).epsilon(1e-13));
  for (auto bc : {kPlus, kMinus}) {
    for (double xi : {0.0, 0.5, 1.26, 3.0, 40.0}) {
      CHECK(std::fabs(energy_profile(canon, bc, xi, 0.8, Tilt::Tilted)) <= 1e-12);
      CHECK(std::fabs(energy_profile(canon, bc, xi, -0.8, Tilt::Tilted)) <= 1e-12);
    }
    // strictly decreasing in xi at interior m
    for (double m = -0.7; m <= 0.7; m += 0.1)
      for (double xi = 0.0; xi < 5.0; xi += 0.5)
        CHECK(energy_profile(canon, bc, xi + 0.5, m, Tilt::Tilted) <
              energy_profile(canon, bc, xi, m, Tilt::Tilted));
  }
  CHECK(salt_potential_chord_slope(canon) == doctest::Approx(0.485085365787961).epsilon(1e-13));
}

TEST_CASE("curvature ratio") {
  CHECK(curvature_ratio(canon, kPlus, 0.8) == INFINITY);
  CHECK(curvature_ratio(canon, kMinus, -0.8) == INFINITY);
  CHECK(curvature_ratio(canon, kPlus, 0.0) == doctest::Approx(1.2934238078443102).epsilon(1e-13));
  for (auto bc : {kPlus, kMinus}) {
    for (double m = -0.75; m <= 0.75; m += 0.05) {
      const double ratio = droplet_cost(canon, bc, m, 2) / salt_potential(canon, m, 2);
      CHECK(curvature_ratio(canon, bc, m) > 0.0);
      CHECK(curvature_ratio(canon, bc, m) == doctest::Approx(ratio).epsilon(1e-12));
    }
  }
  // E'' > 0 exactly where T < xi
  const double xi = 2.0;
  for (double m = -0.79; m <= 0.79; m += 0.01) {
    const double e2 = energy_profile(canon, kPlus, xi, m, Tilt::Raw, 2);
    if (std::fabs(curvature_ratio(canon, kPlus, m) - xi) > 1e-6)
      CHECK((e2 > 0.0) == (curvature_ratio(canon, kPlus, m) < xi));
  }
}

TEST_CASE("convexity profile") {
  const auto one = convexity_profile(canon, kPlus, curvature_ratio(canon, kPlus, 0.0));
  REQUIRE(one.size() == 1);
  CHECK(std::fabs(one[0] - (0.0)) <= 1e-10);

  // Minus: scan T on a grid to locate its interior minimum, then go slightly above.
  double t_min = INFINITY;
  double m_min = 0.0;
  for (int i = 1; i < 20000; ++i) {
    const double m = -0.98 + 1.96 * i / 20000.0;
    const double t = curvature_ratio(ice, kMinus, m);
    if (t < t_min) {
      t_min = t;
      m_min = m;
    }
  }
  CHECK(std::fabs(curvature_ratio_turning_point(ice) - (m_min)) <= 1e-3);
  const auto two = convexity_profile(ice, kMinus, t_min * 1.01);
  REQUIRE(two.size() == 2);
  CHECK(two[0] < m_min);
  CHECK(two[1] > m_min);
  CHECK(curvature_ratio(ice, kMinus, two[0]) == doctest::Approx(t_min * 1.01).epsilon(1e-9));
  CHECK(curvature_ratio(ice, kMinus, two[1]) == doctest::Approx(t_min * 1.01).epsilon(1e-9));
  CHECK(convexity_profile(ice, kMinus, t_min * 0.99).empty());
  CHECK_FALSE(convex_cell(ice, kMinus, t_min * 0.99).has_value());

  const auto cell = convex_cell(ice, kMinus, t_min * 1.01);
  REQUIRE(cell.has_value());
  CHECK(cell->lo == doctest::Approx(two[0]));
  CHECK(cell->hi == doctest::Approx(two[1]));

  const auto plus_cell = convex_cell(canon, kPlus, 2.0);
  REQUIRE(plus_cell.has_value());
  CHECK(plus_cell->lo == -0.8);
}

TEST_CASE("onsager helper") {
  CHECK(onsager_critical_coupling() == doctest::Approx(0.44068679350977147));
  CHECK(onsager_m_star(0.3) == 0.0);
  CHECK(onsager_m_star(0.6) == doctest::Approx(std::pow(1 - std::pow(std::sinh(1.2), -4), 0.125)));
}
