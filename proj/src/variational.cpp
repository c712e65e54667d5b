#include <saltice/variational.hpp>

#include <saltice/numerics.hpp>
#include <saltice/rate_core.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace saltice {

std::string_view to_string(MinimizerKind kind) {
  switch (kind) {
    case MinimizerKind::AtPlusEndpoint:
      return "at_plus_endpoint";
    case MinimizerKind::AtMinusEndpoint:
      return "at_minus_endpoint";
    case MinimizerKind::Interior:
      return "interior";
    case MinimizerKind::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

MinimizerSet minimize_q(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt) {
  p.validate();
  if (!(pt.xi >= 0.0) || !std::isfinite(pt.b))
    throw std::domain_error("minimize_q: need xi >= 0 and finite b");
  const double ms = p.m_star;

  std::vector<double> candidates{-ms, ms};
  if (const auto cell = convex_cell(p, bc, pt.xi)) {
    auto slope = [&](double m) { return reduced_rate(p, bc, pt, m, 1); };
    const double lo = slope(cell->lo);
    const double hi = slope(cell->hi);
    if (lo < 0.0 && hi > 0.0)
      candidates.push_back(numerics::bisect(slope, cell->lo, cell->hi, {}, "Q'(m) = 0"));
  }

  std::vector<std::pair<double, double>> scored;
  for (double m : candidates) scored.emplace_back(m, reduced_rate(p, bc, pt, m));
  double best = scored.front().second;
  for (const auto& s : scored) best = std::min(best, s.second);

  MinimizerSet out;
  out.value = best;
  std::sort(scored.begin(), scored.end());
  for (const auto& [m, v] : scored) {
    if (v - best > kValueTol) continue;
    if (!out.minimizers.empty() && m - out.minimizers.back() < kSeparationTol) {
      // Keep an exact endpoint in preference to a bisection result next to it.
      if (m == ms) out.minimizers.back() = m;
      continue;
    }
    out.minimizers.push_back(m);
  }

  if (out.minimizers.size() > 1) {
    out.kind = MinimizerKind::Degenerate;
  } else if (out.minimizers.front() == ms) {
    out.kind = MinimizerKind::AtPlusEndpoint;
  } else if (out.minimizers.front() == -ms) {
    out.kind = MinimizerKind::AtMinusEndpoint;
  } else {
    out.kind = MinimizerKind::Interior;
  }
  return out;
}

namespace {

std::string describe(const MinimizerSet& set) {
  std::ostringstream os;
  os.precision(12);
  os << "rate function has " << set.multiplicity() << " minimizers:";
  for (double m : set.minimizers) os << ' ' << m;
  return os.str();
}

double unique_minimizer(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt) {
  auto set = minimize_q(p, bc, pt);
  if (set.multiplicity() != 1) throw MultipleMinimizers(std::move(set));
  return set.minimizers.front();
}

}  // namespace

MultipleMinimizers::MultipleMinimizers(MinimizerSet set)
    : std::runtime_error(describe(set)), set_(std::move(set)) {}

double m_plus(const ModelParams& p, ThermoPoint pt) {
  return unique_minimizer(p, BoundaryCondition::Plus, pt);
}

double m_minus(const ModelParams& p, ThermoPoint pt) {
  return unique_minimizer(p, BoundaryCondition::Minus, pt);
}

}  // namespace saltice
