#pragma once

#include <saltice/params.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <vector>

namespace saltice {

using BigInt = boost::multiprecision::cpp_int;

/// Number of salt placements with N salts, Q of them on plus sites, given total
/// magnetization M on `volume` sites: C((V+M)/2, Q) C((V-M)/2, N-Q).
/// Throws std::domain_error when M and volume have different parity.
BigInt salt_count(std::int64_t volume, std::int64_t M, std::int64_t N, std::int64_t Q);

/// Natural log of a positive big integer; -inf for zero.
double log_big(const BigInt& x);

/// N = floor(c * volume); a 1e-9 slack absorbs representation error in c.
std::int64_t salt_total(double c, std::int64_t volume);

/// Salt entropy per site, -(1+m)/2 S(2 theta c/(1+m)) - (1-m)/2 S(2(1-theta)c/(1-m))
/// with S(p) = p log p + (1-p) log(1-p).
/// `eta` is the admissibility margin: |m| <= 1-eta and both occupation
/// fractions <= 1-eta, otherwise std::domain_error.
double entropy_xi(double m, double theta, double c, double eta = 0.0);

/// |log A / V - Xi| with M = floor(m V) (moved down one if its parity is off),
/// N = floor(c V) and Q = floor(theta c V).
double stirling_gap(std::int64_t volume, double m, double theta, double c, double eta = 0.0);

struct ExactSpec {
  int L = 3;
  BoundaryCondition bc = BoundaryCondition::Plus;
  double J = 0.5;
  double kappa = 1.0;
  double c = 0.25;
  double h = 0.0;
  unsigned workers = 1;  ///< enumeration threads; results are identical for any count
};

inline constexpr int kMaxExactSide = 5;

struct ExactEntry {
  int M = 0;
  int Q = 0;
  double probability = 0.0;
};

struct ExactDistribution {
  ExactSpec spec;
  int volume = 0;
  int N = 0;
  std::vector<ExactEntry> entries;  ///< sorted by (M, Q); only nonzero-weight pairs
  double log_normalizer = 0.0;      ///< log of the sum of exp(J E + h M) C C e^{kappa Q}

  double probability(int M, int Q) const;
  std::map<int, double> marginal_m() const;
  /// P(Q | M); empty when M has zero probability.
  std::map<int, double> conditional_q(int M) const;
  double mean_m() const;
};

/// Full enumeration of the spin configurations of an L x L box (L <= 5) inside a
/// fixed +1 or -1 ring, with the salt sector summed exactly.
ExactDistribution exact_distribution(const ExactSpec& spec);

/// Exact joint histogram of (number of plus sites, bond sum) for the L x L box.
/// counts[n_plus][bond_sum + offset]; offset is the number of bonds.
struct SpinHistogram {
  int L = 0;
  int bonds = 0;
  std::vector<std::vector<std::uint64_t>> counts;
};

SpinHistogram enumerate_spins(int L, BoundaryCondition bc, unsigned workers = 1);

/// CSV rows `M,Q,probability` after the comment header.
void write_csv(const ExactDistribution& dist, std::ostream& os);

}  // namespace saltice
