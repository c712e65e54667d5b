#pragma once

#include <saltice/params.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace saltice {

enum class MinimizerKind { AtPlusEndpoint, AtMinusEndpoint, Interior, Degenerate };

std::string_view to_string(MinimizerKind kind);

/// All global minimizers of m -> Q(m) on [-m_star, m_star].
struct MinimizerSet {
  std::vector<double> minimizers;  ///< ascending, pairwise >= kSeparationTol apart
  double value = 0.0;              ///< the common minimum
  MinimizerKind kind = MinimizerKind::Interior;

  std::size_t multiplicity() const { return minimizers.size(); }
};

inline constexpr double kValueTol = 1e-9;
inline constexpr double kSeparationTol = 1e-6;

/// Global minimization of the reduced rate function.
///
/// Candidates are the two endpoints plus, when E is convex somewhere, the
/// unique stationary point of Q inside the convex cell (E' is increasing there,
/// so a bisection on E'(m) = b finds it). Concave stretches can only host
/// maxima, so nothing else needs to be examined.
MinimizerSet minimize_q(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt);

/// Raised by the single-minimizer queries at points on a critical curve.
class MultipleMinimizers : public std::runtime_error {
 public:
  explicit MultipleMinimizers(MinimizerSet set);
  const MinimizerSet& minimizers() const { return set_; }

 private:
  MinimizerSet set_;
};

/// Unique minimizer for Plus (liquid) boundary conditions.
double m_plus(const ModelParams& p, ThermoPoint pt);
/// Unique minimizer for Minus (ice) boundary conditions.
double m_minus(const ModelParams& p, ThermoPoint pt);

}  // namespace saltice
