#include <saltice/params.hpp>

#include <cmath>
#include <stdexcept>

namespace saltice {

void ModelParams::validate() const {
  if (d < 2) throw std::domain_error("model: dimension d must be >= 2");
  if (!(m_star > 0.0 && m_star < 1.0))
    throw std::domain_error("model: m_star must lie in (0, 1)");
  if (!(w1 > 0.0) || !std::isfinite(w1))
    throw std::domain_error("model: w1 must be positive and finite");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::domain_error("model: kappa must be positive and finite");
}

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Plus ? "plus" : "minus";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
  if (text == "plus" || text == "+" || text == "liquid") return BoundaryCondition::Plus;
  if (text == "minus" || text == "-" || text == "ice") return BoundaryCondition::Minus;
  throw std::invalid_argument("unknown boundary condition '" + std::string(text) +
                              "' (expected plus or minus)");
}

double onsager_critical_coupling() { return 0.5 * std::log1p(std::sqrt(2.0)); }

double onsager_m_star(double coupling) {
  if (coupling <= onsager_critical_coupling()) return 0.0;
  const double s = std::sinh(2.0 * coupling);
  return std::pow(1.0 - std::pow(s, -4.0), 0.125);
}

}  // namespace saltice
