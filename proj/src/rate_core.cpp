#include <saltice/rate_core.hpp>

#include <saltice/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace saltice {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_order(int order) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("derivative order must be 0, 1 or 2, got " +
                                std::to_string(order));
}

void check_magnetization(const ModelParams& p, double m) {
  if (!(std::fabs(m) <= p.m_star * (1.0 + 1e-14)))
    throw std::domain_error("magnetization " + std::to_string(m) + " outside [-m_star, m_star]");
}

// Fraction of the volume that has to flip to reach m from the favoured phase.
double flipped_fraction(const ModelParams& p, BoundaryCondition bc, double m) {
  const double s = bc == BoundaryCondition::Plus ? (p.m_star - m) / (2.0 * p.m_star)
                                                 : (p.m_star + m) / (2.0 * p.m_star);
  return std::clamp(s, 0.0, 1.0);
}

double xlogx_ratio(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

}  // namespace

double salt_potential(const ModelParams& p, double m, int order) {
  check_order(order);
  if (!(std::fabs(m) <= 1.0)) throw std::domain_error("salt_potential: |m| > 1");
  const double ek = std::exp(p.kappa);
  const double arg = 0.5 * (1.0 - m) + 0.5 * ek * (1.0 + m);
  if (order == 0) return std::log(arg);
  const double slope = 0.5 * std::expm1(p.kappa) / arg;
  return order == 1 ? slope : -slope * slope;
}

double salt_entropy(double m, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("salt_entropy: theta outside [0, 1]");
  if (!(std::fabs(m) <= 1.0)) throw std::domain_error("salt_entropy: |m| > 1");
  if (theta > 0.0 && !(1.0 + m > 0.0))
    throw std::domain_error("salt_entropy: salt on plus sites requires 1 + m > 0");
  if (theta < 1.0 && !(1.0 - m > 0.0))
    throw std::domain_error("salt_entropy: salt on minus sites requires 1 - m > 0");
  return -xlogx_ratio(theta, 0.5 * (1.0 + m)) - xlogx_ratio(1.0 - theta, 0.5 * (1.0 - m));
}

double optimal_salt_fraction(const ModelParams& p, double m) {
  if (!(std::fabs(m) <= 1.0)) throw std::domain_error("optimal_salt_fraction: |m| > 1");
  const double plus = std::exp(p.kappa) * (1.0 + m);
  return plus / (plus + (1.0 - m));
}

double droplet_cost(const ModelParams& p, BoundaryCondition bc, double m, int order) {
  check_order(order);
  check_magnetization(p, m);
  const double s = flipped_fraction(p, bc, m);
  const double alpha = static_cast<double>(p.d - 1) / p.d;
  const double ds_dm = (bc == BoundaryCondition::Plus ? -1.0 : 1.0) / (2.0 * p.m_star);
  switch (order) {
    case 0:
      return p.w1 * std::pow(s, alpha);
    case 1:
      if (s == 0.0) return std::copysign(kInf, ds_dm);
      return p.w1 * alpha * std::pow(s, alpha - 1.0) * ds_dm;
    default:
      if (s == 0.0) return -kInf;
      return p.w1 * alpha * (alpha - 1.0) * std::pow(s, alpha - 2.0) * ds_dm * ds_dm;
  }
}

double joint_rate(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt, double m,
                  double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("joint_rate: theta outside [0, 1]");
  return -pt.b * m - pt.xi * p.kappa * theta - pt.xi * salt_entropy(m, theta) +
         droplet_cost(p, bc, m);
}

double reduced_rate(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt, double m,
                    int order) {
  const double e = energy_profile(p, bc, pt.xi, m, Tilt::Raw, order);
  if (order == 0) return -pt.b * m + e;
  if (order == 1) return -pt.b + e;
  return e;
}

double salt_potential_chord_slope(const ModelParams& p) {
  return chord_slope(salt_potential(p, p.m_star), salt_potential(p, -p.m_star), p.m_star);
}

double energy_profile_chord_slope(const ModelParams& p, BoundaryCondition bc, double xi) {
  const double cost_slope =
      chord_slope(droplet_cost(p, bc, p.m_star), droplet_cost(p, bc, -p.m_star), p.m_star);
  return cost_slope - xi * salt_potential_chord_slope(p);
}

double energy_profile(const ModelParams& p, BoundaryCondition bc, double xi, double m, Tilt tilt,
                      int order) {
  check_order(order);
  check_magnetization(p, m);
  if (xi < 0.0) throw std::domain_error("energy_profile: xi must be >= 0");
  const double raw = -xi * salt_potential(p, m, order) + droplet_cost(p, bc, m, order);
  if (tilt == Tilt::Raw) return raw;
  const double slope = energy_profile_chord_slope(p, bc, xi);
  switch (order) {
    case 0: {
      // Anchor exactly: the tilted profile vanishes at both endpoints.
      if (m == -p.m_star || m == p.m_star) return 0.0;
      const double base = -xi * salt_potential(p, -p.m_star) + droplet_cost(p, bc, -p.m_star);
      return raw - base - (m + p.m_star) * slope;
    }
    case 1:
      return raw - slope;
    default:
      return raw;
  }
}

double curvature_ratio(const ModelParams& p, BoundaryCondition bc, double m) {
  check_magnetization(p, m);
  const double gap = bc == BoundaryCondition::Plus ? p.m_star - m : p.m_star + m;
  if (gap <= 0.0) return kInf;
  const double d = p.d;
  const double two_m = 2.0 * p.m_star;
  const double c = p.w1 * (d - 1.0) * std::pow(two_m, (d + 1.0) / d) / (d * d * two_m * two_m);
  const double shifted = m + 1.0 / std::tanh(0.5 * p.kappa);
  return c * std::pow(gap, -(d + 1.0) / d) * shifted * shifted;
}

double curvature_ratio_turning_point(const ModelParams& p) {
  // d/dm log T = -((d+1)/d) / (m_star + m) + 2 / (m + coth) = 0.
  const double d = p.d;
  const double coth = 1.0 / std::tanh(0.5 * p.kappa);
  return (((d + 1.0) / d) * coth - 2.0 * p.m_star) / ((d - 1.0) / d);
}

std::vector<double> convexity_profile(const ModelParams& p, BoundaryCondition bc, double xi) {
  p.validate();
  if (xi < 0.0) throw std::domain_error("convexity_profile: xi must be >= 0");
  const double ms = p.m_star;
  auto excess = [&](double m) { return curvature_ratio(p, bc, m) - xi; };
  std::vector<double> roots;
  if (bc == BoundaryCondition::Plus) {
    // T increases from T(-m_star) to +infinity.
    if (excess(-ms) < 0.0) roots.push_back(numerics::bisect(excess, -ms, ms, {}, "T(m) = xi"));
    return roots;
  }
  // T decreases from +infinity, turns at m_T, then increases.
  const double turn = curvature_ratio_turning_point(p);
  if (turn >= ms) {
    if (excess(ms) < 0.0) roots.push_back(numerics::bisect(excess, -ms, ms, {}, "T(m) = xi"));
    return roots;
  }
  if (!(excess(turn) < 0.0)) return roots;
  roots.push_back(numerics::bisect(excess, -ms, turn, {}, "T(m) = xi, left branch"));
  if (excess(ms) > 0.0)
    roots.push_back(numerics::bisect(excess, turn, ms, {}, "T(m) = xi, right branch"));
  return roots;
}

std::optional<Interval> convex_cell(const ModelParams& p, BoundaryCondition bc, double xi) {
  const auto roots = convexity_profile(p, bc, xi);
  if (roots.empty()) return std::nullopt;
  if (bc == BoundaryCondition::Plus) return Interval{-p.m_star, roots.front()};
  if (roots.size() == 2) return Interval{roots[0], roots[1]};
  return Interval{roots.front(), p.m_star};
}

}  // namespace saltice
