#include <saltice/critical_curves.hpp>

#include <saltice/numerics.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace saltice {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr auto kMinus = BoundaryCondition::Minus;
constexpr auto kPlus = BoundaryCondition::Plus;

double raw(const ModelParams& p, BoundaryCondition bc, double xi, double m, int order = 0) {
  return energy_profile(p, bc, xi, m, Tilt::Raw, order);
}

// Tangent at m, evaluated at the right endpoint, lies below E(m_star) iff > 0.
double right_tangency_residual(const ModelParams& p, BoundaryCondition bc, double xi, double m) {
  return raw(p, bc, xi, p.m_star) - raw(p, bc, xi, m) - (p.m_star - m) * raw(p, bc, xi, m, 1);
}

// Tangent at m, evaluated at the left endpoint, lies below E(-m_star) iff > 0.
double left_tangency_residual(const ModelParams& p, BoundaryCondition bc, double xi, double m) {
  return raw(p, bc, xi, -p.m_star) - raw(p, bc, xi, m) + (m + p.m_star) * raw(p, bc, xi, m, 1);
}

bool dips_below_zero(const ModelParams& p, BoundaryCondition bc, double xi) {
  const auto local = tilted_local_minimum(p, bc, xi);
  return local && local->value < 0.0;
}

}  // namespace

std::optional<TiltedMinimum> tilted_local_minimum(const ModelParams& p, BoundaryCondition bc,
                                                  double xi) {
  const auto cell = convex_cell(p, bc, xi);
  if (!cell) return std::nullopt;
  auto slope = [&](double m) { return energy_profile(p, bc, xi, m, Tilt::Tilted, 1); };
  if (!(slope(cell->lo) < 0.0 && slope(cell->hi) > 0.0)) return std::nullopt;
  const double m = numerics::bisect(slope, cell->lo, cell->hi, {}, "tilted stationary point");
  return TiltedMinimum{m, energy_profile(p, bc, xi, m, Tilt::Tilted)};
}

double onset_threshold(const ModelParams& p, BoundaryCondition bc, double upper) {
  double lo = 0.0;
  double hi = upper;
  if (dips_below_zero(p, bc, lo) || !dips_below_zero(p, bc, hi))
    throw numerics::BracketError("onset_threshold: tilted profile does not change sign on [0, " +
                                 std::to_string(upper) + "]");
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dips_below_zero(p, bc, mid) ? hi : lo) = mid;
  }
  return hi;
}

// --- plus -------------------------------------------------------------------

double xi_t_plus(const ModelParams& p) {
  p.validate();
  const double gap = salt_potential(p, -p.m_star, 1) - salt_potential_chord_slope(p);
  if (!(gap > 0.0)) return kInf;
  return p.w1 / (2.0 * p.m_star * p.d) / gap;
}

double b2_plus(const ModelParams& p, double xi) {
  if (xi < 0.0) throw std::domain_error("b2_plus: xi must be >= 0");
  const double base = p.w1 / (2.0 * p.m_star);
  if (xi < xi_t_plus(p)) return -base - xi * salt_potential_chord_slope(p);
  return -(p.d - 1.0) / p.d * base - xi * salt_potential(p, -p.m_star, 1);
}

std::optional<double> m1_plus(const ModelParams& p, double xi) {
  if (xi < 0.0) throw std::domain_error("m1_plus: xi must be >= 0");
  if (xi <= xi_t_plus(p)) return std::nullopt;
  const auto cell = convex_cell(p, kPlus, xi);
  if (!cell) throw numerics::BracketError("m1_plus: no convex cell above xi_t");
  auto residual = [&](double m) { return right_tangency_residual(p, kPlus, xi, m); };
  if (residual(cell->lo) <= 0.0) return cell->lo;  // xi within rounding of xi_t
  return numerics::bisect(residual, cell->lo, cell->hi, {}, "m1_plus tangency");
}

double b1_plus(const ModelParams& p, double xi) {
  const auto m1 = m1_plus(p, xi);
  if (!m1) return b2_plus(p, xi);
  return raw(p, kPlus, xi, *m1, 1);
}

// --- minus ------------------------------------------------------------------

double xi_1_closed_form(const ModelParams& p) {
  p.validate();
  const double gap = salt_potential_chord_slope(p) - salt_potential(p, p.m_star, 1);
  if (!(gap > 0.0)) return kInf;
  return p.w1 / (2.0 * p.m_star * p.d) / gap;
}

double xi_2_closed_form(const ModelParams& p) {
  p.validate();
  const double scale = 2.0 * p.m_star * p.d;
  return -(p.d - 1.0) * p.w1 / (scale * scale * salt_potential(p, p.m_star, 2));
}

bool gap_condition_holds(const ModelParams& p) {
  p.validate();
  const double ms = p.m_star;
  const double d = p.d;
  const double lhs = salt_potential(p, ms) - 2.0 * ms * salt_potential(p, ms, 1) +
                     d / (d - 1.0) * (2.0 * ms) * (2.0 * ms) * salt_potential(p, ms, 2);
  return lhs <= salt_potential(p, -ms);
}

MinusThresholds thresholds_minus(const ModelParams& p) {
  MinusThresholds th;
  th.xi_1 = xi_1_closed_form(p);
  th.xi_2 = xi_2_closed_form(p);
  if (th.xi_1 >= th.xi_2) {
    th.xi_t = th.xi_u = th.xi_1;
    return th;
  }
  th.xi_t = onset_threshold(p, kMinus, th.xi_1);
  th.xi_u = th.xi_2;
  if (const auto local = tilted_local_minimum(p, kMinus, th.xi_t)) th.m0 = local->m;
  return th;
}

TildeCurves tilde_curves(const ModelParams& p, double xi, const MinusThresholds& th) {
  if (xi < 0.0) throw std::domain_error("tilde_curves: xi must be >= 0");
  TildeCurves out;
  if (xi <= th.xi_t) {
    out.b_upper = out.b_lower = energy_profile_chord_slope(p, kMinus, xi);
    return out;
  }
  const auto cell = convex_cell(p, kMinus, xi);
  if (!cell) throw numerics::BracketError("tilde_curves: no convex cell above the onset");

  auto left = [&](double m) { return left_tangency_residual(p, kMinus, xi, m); };
  double m_lower;
  if (left(cell->hi) <= 0.0) {
    // Within rounding of the onset: the contact degenerates to the local minimum.
    const auto local = tilted_local_minimum(p, kMinus, xi);
    m_lower = local ? local->m : cell->hi;
  } else {
    m_lower = numerics::bisect(left, cell->lo, cell->hi, {}, "b~2 tangency");
  }
  out.m_lower = m_lower;
  out.b_lower = raw(p, kMinus, xi, m_lower, 1);

  if (xi >= th.xi_u) {
    out.b_upper = raw(p, kMinus, xi, p.m_star, 1);
    return out;
  }
  auto right = [&](double m) { return right_tangency_residual(p, kMinus, xi, m); };
  double m_upper;
  if (right(cell->lo) <= 0.0) {
    const auto local = tilted_local_minimum(p, kMinus, xi);
    m_upper = local ? local->m : cell->lo;
  } else {
    m_upper = numerics::bisect(right, cell->lo, cell->hi, {}, "b~1 tangency");
  }
  out.m_upper = m_upper;
  out.b_upper = raw(p, kMinus, xi, m_upper, 1);
  return out;
}

TildeCurves tilde_curves(const ModelParams& p, double xi) {
  return tilde_curves(p, xi, thresholds_minus(p));
}

// --- both -------------------------------------------------------------------

BandEdges CriticalCurves::edges(const ModelParams& p, double xi) const {
  if (bc == kPlus) return {b1_plus(p, xi), b2_plus(p, xi)};
  MinusThresholds th;
  th.xi_t = xi_t;
  th.xi_u = xi_u;
  th.xi_1 = xi_1.value_or(xi_t);
  th.xi_2 = xi_2.value_or(xi_u);
  th.m0 = m0;
  const auto tc = tilde_curves(p, xi, th);
  return {tc.b_upper, tc.b_lower};
}

CriticalCurves critical_thresholds(const ModelParams& p, BoundaryCondition bc) {
  p.validate();
  CriticalCurves out;
  out.bc = bc;
  if (bc == kPlus) {
    out.xi_t = out.xi_u = xi_t_plus(p);
    return out;
  }
  const auto th = thresholds_minus(p);
  out.xi_t = th.xi_t;
  out.xi_u = th.xi_u;
  out.xi_1 = th.xi_1;
  out.xi_2 = th.xi_2;
  out.m0 = th.m0;
  return out;
}

double default_xi_max(const ModelParams& p, const CriticalCurves& thresholds) {
  return 8.0 * std::max(thresholds.xi_t, xi_2_closed_form(p));
}

CriticalCurves sample_curves(const ModelParams& p, BoundaryCondition bc, int count,
                             double xi_max) {
  if (count < 2) throw std::invalid_argument("sample_curves: need at least 2 samples");
  auto out = critical_thresholds(p, bc);
  if (!(xi_max > 0.0)) xi_max = default_xi_max(p, out);
  if (!std::isfinite(xi_max)) throw std::domain_error("sample_curves: unbounded xi range");
  out.samples.reserve(static_cast<std::size_t>(count));
  const double decades = 3.0;
  for (int k = 0; k < count; ++k) {
    const double xi = xi_max * std::pow(10.0, -decades * (1.0 - static_cast<double>(k) / (count - 1)));
    const auto e = out.edges(p, xi);
    out.samples.push_back({xi, e.b_upper, e.b_lower});
  }
  return out;
}

CriticalCurves sample_curves_at(const ModelParams& p, BoundaryCondition bc,
                                std::span<const double> xis) {
  auto out = critical_thresholds(p, bc);
  out.samples.reserve(xis.size());
  for (double xi : xis) {
    const auto e = out.edges(p, xi);
    out.samples.push_back({xi, e.b_upper, e.b_lower});
  }
  return out;
}

// --- linkage ----------------------------------------------------------------

namespace {

LinkagePoint solve_linkage(double m, double kappa, double c) {
  if (c == 0.0) return {};
  const double ek = std::exp(kappa);
  auto q_plus_of = [ek](double qm) { return ek * qm / (1.0 - qm + ek * qm); };
  auto mismatch = [&](double qm) {
    return q_plus_of(qm) * 0.5 * (1.0 + m) + qm * 0.5 * (1.0 - m) - c;
  };
  numerics::RootOptions opts;
  opts.abs_tol = c * 1e-14;
  const double qm = numerics::bisect(mismatch, 0.0, 1.0, opts, "linkage concentration");
  const double qp = q_plus_of(qm);
  return {0.5 * (std::log1p(-qp) - std::log1p(-qm)), qp, qm};
}

}  // namespace

LinkageBoundaries linkage_boundaries(double m_star, double kappa, double c) {
  if (!(m_star > 0.0 && m_star < 1.0)) throw std::domain_error("linkage: m_star outside (0, 1)");
  if (!(kappa >= 0.0)) throw std::domain_error("linkage: kappa must be >= 0");
  if (!(c >= 0.0 && c < 1.0))
    throw std::domain_error("linkage: no solution for concentration outside [0, 1)");
  return {solve_linkage(m_star, kappa, c), solve_linkage(-m_star, kappa, c)};
}

LinkageBoundaries linkage_boundaries(const ModelParams& p, double c) {
  return linkage_boundaries(p.m_star, p.kappa, c);
}

std::optional<Interval> b0_separation_window(const ModelParams& p) {
  p.validate();
  const double ms = p.m_star;
  const double lower = p.w1 / (salt_potential(p, ms) - salt_potential(p, -ms));
  const double upper = (p.d - 1.0) / p.d * p.w1 / (2.0 * ms * salt_potential(p, ms, 1));
  if (!(lower < upper)) return std::nullopt;
  return Interval{lower, upper};
}

}  // namespace saltice
