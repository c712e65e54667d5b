#include <saltice/numerics.hpp>

#include <boost/math/policies/policy.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace saltice::numerics {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const RootOptions& opts, const char* context) {
  const double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if (!(std::signbit(flo) != std::signbit(fhi)) || std::isnan(flo) || std::isnan(fhi)) {
    std::ostringstream os;
    os.precision(17);
    os << context << ": no sign change on [" << lo << ", " << hi << "] (f = " << flo << ", "
       << fhi << ")";
    throw BracketError(os.str());
  }
  const double tol = opts.abs_tol;
  auto close_enough = [tol](double a, double b) { return std::fabs(b - a) <= tol; };
  std::uintmax_t iters = static_cast<std::uintmax_t>(opts.max_iter);
  using quiet = boost::math::policies::policy<
      boost::math::policies::evaluation_error<boost::math::policies::ignore_error>>;
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, close_enough, iters, quiet());
  return 0.5 * (a + b);
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi) {
  // Brent's method degenerates to golden-section steps when parabolic steps
  // are rejected; location accuracy is limited to ~sqrt(eps) by flatness.
  const int bits = std::numeric_limits<double>::digits / 2 + 1;
  std::uintmax_t iters = 500;
  return boost::math::tools::brent_find_minima(f, lo, hi, bits, iters).first;
}

}  // namespace saltice::numerics
