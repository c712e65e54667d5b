#pragma once

#include <string>
#include <string_view>

namespace saltice {

/// Inputs consumed by every closed-form rate function.
///
/// The Ising coupling J never appears directly: it enters only through the
/// spontaneous magnetization `m_star` and the unit-volume Wulff cost `w1`,
/// both of which are treated as free parameters.
struct ModelParams {
  int d = 2;            ///< lattice dimension, d >= 2
  double m_star = 0.8;  ///< spontaneous magnetization, in (0, 1)
  double w1 = 1.0;      ///< surface free energy of the unit-volume droplet
  double kappa = 1.0;   ///< salt-ice repulsion, > 0

  /// Throws std::domain_error when an invariant is violated.
  void validate() const;
};

/// Fixed spins outside the box: Plus is liquid water, Minus is ice.
enum class BoundaryCondition { Plus, Minus };

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(std::string_view text);

/// Point of the scaled (xi, b) plane: h = b / L and c = xi / L.
struct ThermoPoint {
  double b = 0.0;
  double xi = 0.0;
};

/// Spontaneous magnetization of the d = 2 nearest-neighbour Ising model,
/// (1 - sinh(2J)^-4)^(1/8) above the critical coupling and 0 below it.
/// This is the classical Onsager-Yang result, supplied as a convenience.
double onsager_m_star(double coupling);

/// Critical coupling of the square-lattice Ising model, log(1 + sqrt 2) / 2.
double onsager_critical_coupling();

}  // namespace saltice
