#pragma once

// Closed-form surface-order rate functions of the Ising solvent with canonical
// salt at concentration c = xi / L and field h = b / L.
//
// Notation used throughout the library:
//   g(m)        salt_potential          log((1-m)/2 + e^kappa (1+m)/2)
//   Y(m,theta)  salt_entropy            entropy of placing a salt fraction theta on plus sites
//   M(m)        droplet_cost            w1 ((m_star -/+ m) / (2 m_star))^((d-1)/d)
//   Q(m,theta)  joint_rate              -b m - xi kappa theta - xi Y + M
//   Q(m)        reduced_rate            -b m - xi g(m) + M(m)
//   E(m)        energy_profile (raw)    -xi g(m) + M(m)
//   E^(m)       energy_profile (tilted) E minus its chord through +-m_star
//   T(m)        curvature_ratio         M''(m) / g''(m)
//
// Every function is pure. Derivative orders are 0, 1 or 2.

#include <saltice/params.hpp>

#include <optional>
#include <vector>

namespace saltice {

double salt_potential(const ModelParams& p, double m, int order = 0);

/// Entropy of salt with plus-site fraction theta at magnetization m, with the
/// convention 0 log 0 = 0.
double salt_entropy(double m, double theta);

/// Unique minimizer of theta -> joint_rate at fixed m:
/// e^kappa (1+m) / (e^kappa (1+m) + (1-m)).
double optimal_salt_fraction(const ModelParams& p, double m);

/// Droplet cost and its derivatives. First and second derivatives diverge at
/// the endpoint favoured by the boundary condition (m_star for Plus, -m_star
/// for Minus); there they return signed infinities instead of throwing.
double droplet_cost(const ModelParams& p, BoundaryCondition bc, double m, int order = 0);

double joint_rate(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt, double m,
                  double theta);

double reduced_rate(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt, double m,
                    int order = 0);

enum class Tilt { Raw, Tilted };

double energy_profile(const ModelParams& p, BoundaryCondition bc, double xi, double m,
                      Tilt tilt = Tilt::Raw, int order = 0);

/// (phi(m_star) - phi(-m_star)) / (2 m_star).
inline double chord_slope(double at_plus, double at_minus, double m_star) {
  return (at_plus - at_minus) / (2.0 * m_star);
}

double salt_potential_chord_slope(const ModelParams& p);
double energy_profile_chord_slope(const ModelParams& p, BoundaryCondition bc, double xi);

/// T(m) = C |m_star -/+ m|^(-(d+1)/d) (m + coth(kappa/2))^2 with
/// C = w1 (d-1) (2 m_star)^((d+1)/d) / (d^2 (2 m_star)^2).
/// The raw profile E is strictly convex exactly where T(m) < xi.
/// Returns +infinity at the favoured endpoint.
double curvature_ratio(const ModelParams& p, BoundaryCondition bc, double m);

/// Location of the unique minimum of T over (-m_star, infinity) for Minus
/// boundary conditions (T is monotone for Plus).
double curvature_ratio_turning_point(const ModelParams& p);

/// Points in (-m_star, m_star) where the second derivative of E changes sign,
/// i.e. transversal solutions of T(m) = xi, sorted ascending. At most one for
/// Plus and two for Minus boundary conditions.
std::vector<double> convexity_profile(const ModelParams& p, BoundaryCondition bc, double xi);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// The (unique, possibly empty) closed interval on which E is convex.
std::optional<Interval> convex_cell(const ModelParams& p, BoundaryCondition bc, double xi);

}  // namespace saltice
