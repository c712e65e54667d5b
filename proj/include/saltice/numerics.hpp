#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace saltice::numerics {

/// Bracketing controls shared by every scalar solve in the library.
struct RootOptions {
  double abs_tol = 1e-12;
  int max_iter = 200;
};

/// Thrown when a bracket does not straddle a sign change. Callers treat this
/// as a logic failure: every bracket used by the library is guaranteed by a
/// monotonicity argument.
class BracketError : public std::runtime_error {
 public:
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

/// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign
/// (a zero at either end is returned directly).
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const RootOptions& opts = {}, const char* context = "bisect");

/// Minimizer of a unimodal f on [lo, hi] (Brent / golden section).
double golden_section_min(const std::function<double(double)>& f, double lo, double hi);

}  // namespace saltice::numerics
