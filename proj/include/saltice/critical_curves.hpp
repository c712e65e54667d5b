#pragma once

#include <saltice/params.hpp>
#include <saltice/rate_core.hpp>

#include <optional>
#include <span>
#include <vector>

namespace saltice {

// ---------------------------------------------------------------------------
// Shared geometry of the tilted profile.

/// Interior local minimum of the tilted profile (it lives in the convex cell).
struct TiltedMinimum {
  double m = 0.0;
  double value = 0.0;
};

/// Stationary point of the tilted profile inside its convex cell, if any.
/// The minimum of the tilted profile over [-m_star, m_star] is
/// min(0, value) since the profile vanishes at both endpoints.
std::optional<TiltedMinimum> tilted_local_minimum(const ModelParams& p, BoundaryCondition bc,
                                                  double xi);

/// Smallest xi at which the tilted profile dips below zero, found by
/// bisection on xi over [0, upper]. This is the onset of phase separation.
double onset_threshold(const ModelParams& p, BoundaryCondition bc, double upper);

// ---------------------------------------------------------------------------
// Liquid (plus) boundary conditions.

/// Onset of phase separation, w1 / (2 m_star d) / (g'(-m_star) - D*_g).
/// Returns +infinity when the denominator is not positive (kappa -> 0).
double xi_t_plus(const ModelParams& p);

/// Lower boundary: piecewise linear in xi, kinked at xi_t.
double b2_plus(const ModelParams& p, double xi);

/// Contact point of the supporting line through (m_star, E(m_star)); defined
/// for xi > xi_t only.
std::optional<double> m1_plus(const ModelParams& p, double xi);

/// Upper boundary, where a macroscopic ice crystal appears.
double b1_plus(const ModelParams& p, double xi);

// ---------------------------------------------------------------------------
// Ice (minus) boundary conditions.

double xi_1_closed_form(const ModelParams& p);
double xi_2_closed_form(const ModelParams& p);

/// Direct evaluation of
///   g(m*) - 2 m* g'(m*) + d/(d-1) (2 m*)^2 g''(m*) <= g(-m*),
/// which holds exactly when xi_1 >= xi_2 (no gap between the two thresholds).
bool gap_condition_holds(const ModelParams& p);

struct MinusThresholds {
  double xi_t = 0.0;  ///< onset of phase separation
  double xi_u = 0.0;  ///< end of the double-transition window
  double xi_1 = 0.0;
  double xi_2 = 0.0;
  std::optional<double> m0;  ///< triple-point magnetization when xi_t < xi_u

  bool has_gap() const { return xi_u > xi_t; }
};

MinusThresholds thresholds_minus(const ModelParams& p);

struct TildeCurves {
  double b_upper = 0.0;  ///< b~1: above it the minimizer is m_star
  double b_lower = 0.0;  ///< b~2: below it the minimizer is -m_star
  std::optional<double> m_upper;  ///< interior contact on b~1 (xi_t < xi < xi_u)
  std::optional<double> m_lower;  ///< interior contact on b~2 (xi > xi_t)
};

TildeCurves tilde_curves(const ModelParams& p, double xi, const MinusThresholds& th);
TildeCurves tilde_curves(const ModelParams& p, double xi);

// ---------------------------------------------------------------------------
// Both boundary conditions.

/// Upper/lower boundaries of the phase-separation band at xi.
struct BandEdges {
  double b_upper = 0.0;
  double b_lower = 0.0;
};

struct CurveSample {
  double xi = 0.0;
  double b_upper = 0.0;
  double b_lower = 0.0;
};

struct CriticalCurves {
  BoundaryCondition bc = BoundaryCondition::Plus;
  double xi_t = 0.0;
  double xi_u = 0.0;
  std::optional<double> xi_1;  ///< minus only
  std::optional<double> xi_2;  ///< minus only
  std::optional<double> m0;    ///< minus only, when xi_t < xi_u
  std::vector<CurveSample> samples;

  /// Band edges at an arbitrary xi, reusing the stored thresholds.
  BandEdges edges(const ModelParams& p, double xi) const;
};

/// Thresholds only (no samples).
CriticalCurves critical_thresholds(const ModelParams& p, BoundaryCondition bc);

inline constexpr int kDefaultCurveSamples = 512;

/// Default sampling range upper end, 8 max(xi_t, xi_2).
double default_xi_max(const ModelParams& p, const CriticalCurves& thresholds);

/// Thresholds plus `count` log-spaced samples on (0, xi_max]
/// (xi_max <= 0 selects the default range).
CriticalCurves sample_curves(const ModelParams& p, BoundaryCondition bc,
                             int count = kDefaultCurveSamples, double xi_max = 0.0);

/// Thresholds plus samples at the given xi values.
CriticalCurves sample_curves_at(const ModelParams& p, BoundaryCondition bc,
                                std::span<const double> xis);

// ---------------------------------------------------------------------------
// Finite-concentration boundaries and the b = 0 window.

struct LinkagePoint {
  double h = 0.0;
  double q_plus = 0.0;   ///< salt fraction on liquid sites
  double q_minus = 0.0;  ///< salt fraction on ice sites
};

struct LinkageBoundaries {
  LinkagePoint liquid_side;  ///< h_+(c)
  LinkagePoint ice_side;     ///< h_-(c)
};

/// Bulk phase-separation boundaries h_+(c), h_-(c) at concentration c in [0, 1).
/// Accepts kappa >= 0.
LinkageBoundaries linkage_boundaries(double m_star, double kappa, double c);
LinkageBoundaries linkage_boundaries(const ModelParams& p, double c);

/// Range of xi for which both
///   ((d-1)/d) w1 / (2 m*) > xi g'(m*)   and   xi (g(m*) - g(-m*)) > w1
/// hold, so the minus-boundary minimizer at b = 0 is interior.
std::optional<Interval> b0_separation_window(const ModelParams& p);

}  // namespace saltice
