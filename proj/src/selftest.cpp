#include <saltice/selftest.hpp>

#include <saltice/critical_curves.hpp>
#include <saltice/exact_ensemble.hpp>
#include <saltice/io.hpp>
#include <saltice/philox.hpp>
#include <saltice/rate_core.hpp>
#include <saltice/variational.hpp>

#include <cmath>
#include <exception>
#include <functional>

namespace saltice {
namespace {

const ModelParams kCanonical{2, 0.8, 1.0, 1.0};
const ModelParams kIceGap{2, 0.98, 1.0, 4.0};

CheckResult near(std::string name, double got, double want, double tol) {
  const bool ok = std::fabs(got - want) <= tol;
  return {std::move(name), ok,
          "got " + format_number(got, 15) + ", want " + format_number(want, 15)};
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, const std::function<CheckResult()>& body) {
    out.push_back(guarded(name, body));
  };
  const auto& p = kCanonical;

  add("salt_potential", [&] { return near("salt_potential", salt_potential(p, 0.8), 0.934701664001166, 1e-12); });
  add("salt_potential_slope", [&] {
    return near("salt_potential_slope", salt_potential(p, 0.8, 1), 0.337387219166386, 1e-12);
  });
  add("chord_slope", [&] {
    return near("chord_slope", salt_potential_chord_slope(p), 0.485085365787961, 1e-12);
  });
  add("optimal_salt_fraction", [&] {
    return near("optimal_salt_fraction", optimal_salt_fraction(p, 0.0), 0.731058578630005, 1e-12);
  });
  add("reduced_rate", [&] {
    return near("reduced_rate", reduced_rate(p, BoundaryCondition::Plus, {0.0, 2.0}, 0.0),
                -0.533122232730008, 1e-12);
  });
  add("xi_t", [&] { return near("xi_t", xi_t_plus(p), 1.259686969216385, 1e-12); });
  add("xi_t_numeric", [&] {
    return near("xi_t_numeric", onset_threshold(p, BoundaryCondition::Plus, 4.0), xi_t_plus(p), 1e-6);
  });
  add("xi_1", [&] { return near("xi_1", xi_1_closed_form(p), 2.115801769677396, 1e-12); });
  add("xi_2", [&] { return near("xi_2", xi_2_closed_form(p), 0.857912093634083, 1e-12); });
  add("b2_plus", [&] { return near("b2_plus", b2_plus(p, 2.0), -1.778825740934155, 1e-12); });
  add("trivial_minimizer", [&] {
    const auto set = minimize_q(p, BoundaryCondition::Plus, {0.0, 0.0});
    return CheckResult{"trivial_minimizer",
                       set.multiplicity() == 1 && std::fabs(set.minimizers[0] - 0.8) < 1e-12,
                       "m = " + format_number(set.minimizers[0])};
  });
  add("ice_gap_thresholds", [&] {
    const auto th = thresholds_minus(kIceGap);
    return CheckResult{"ice_gap_thresholds", th.xi_1 < th.xi_2 && th.xi_t < th.xi_1,
                       "xi_t = " + format_number(th.xi_t) + ", xi_1 = " + format_number(th.xi_1) +
                           ", xi_2 = " + format_number(th.xi_2)};
  });
  add("linkage_slope", [&] {
    const double c = 1e-4;
    const double ratio = linkage_boundaries(p, c).liquid_side.h / c;
    const double want = -salt_potential(p, p.m_star, 1);
    return CheckResult{"linkage_slope", std::fabs(ratio / want - 1.0) < 0.01,
                       "h/c = " + format_number(ratio) + ", want " + format_number(want)};
  });
  add("salt_count", [&] {
    const auto n = salt_count(4, 0, 2, 1);
    return CheckResult{"salt_count", n == 4, "got " + n.str()};
  });
  add("entropy_xi", [&] { return near("entropy_xi", entropy_xi(0.0, 0.5, 0.5), std::log(2.0), 1e-15); });
  add("exact_normalization", [&] {
    ExactSpec spec;
    spec.L = 3;
    double total = 0.0;
    for (const auto& e : exact_distribution(spec).entries) total += e.probability;
    return near("exact_normalization", total, 1.0, 1e-12);
  });
  add("philox_known_answer", [&] {
    const auto b = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
    const bool ok = b[0] == 0x6627e8d5u && b[1] == 0xe169c58du && b[2] == 0xbc57ac4cu &&
                    b[3] == 0x9b00dbd8u;
    return CheckResult{"philox_known_answer", ok, ok ? "matches" : "mismatch"};
  });
  return out;
}

bool report(const std::vector<CheckResult>& results, std::ostream& os) {
  bool all = true;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    all = all && r.passed;
  }
  return all;
}

}  // namespace saltice
