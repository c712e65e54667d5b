#pragma once

#include <saltice/params.hpp>
#include <saltice/philox.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

namespace saltice {

enum class SaltMove { HeatBath, PairSwap };

std::string_view to_string(SaltMove move);
SaltMove parse_salt_move(std::string_view text);

struct SimConfig {
  int L = 16;
  double J = 0.6;
  double kappa = 1.0;
  double c = 0.1;
  double h = 0.0;
  BoundaryCondition bc = BoundaryCondition::Plus;
  std::uint64_t seed = 1;
  std::int64_t sweeps = 1000;
  std::int64_t burn_in = 100;
  std::int64_t thinning = 1;
  SaltMove salt_move = SaltMove::HeatBath;

  int volume() const { return L * L; }
  /// Throws std::domain_error on an invalid configuration.
  void validate() const;
};

/// Square box of spins +-1 and salt occupations 0/1 inside a fixed ring of
/// boundary spins; the totals are kept in step with every move.
struct LatticeState {
  int L = 0;
  BoundaryCondition bc = BoundaryCondition::Plus;
  std::vector<std::int8_t> spins;
  std::vector<std::uint8_t> salts;
  std::int64_t M = 0;  ///< sum of spins
  std::int64_t N = 0;  ///< number of salts
  std::int64_t Q = 0;  ///< salts sitting on plus spins

  int ring_spin() const { return bc == BoundaryCondition::Plus ? 1 : -1; }
  /// Sum of the four neighbours, with the ring standing in outside the box.
  int neighbour_sum(int site) const;
};

/// All spins equal to the ring; floor(c L^2) salts placed uniformly at random.
LatticeState init(const SimConfig& cfg);

/// One Metropolis pass over the sites in raster order, salts held fixed.
void spin_sweep(LatticeState& s, const SimConfig& cfg, const RandomStream& rng,
                std::uint32_t sweep);

/// Exact redraw of the salt field given the spins: Q from the law proportional to
/// C(n+, Q) C(n-, N-Q) e^{kappa Q}, then uniform placement on each sign class.
void salt_heat_bath(LatticeState& s, double kappa, const RandomStream& rng, std::uint32_t sweep);

/// N Metropolis attempts to exchange a salted site with an empty one.
void pair_swap(LatticeState& s, double kappa, const RandomStream& rng, std::uint32_t sweep);

/// Recomputes M, N and Q from scratch; throws std::logic_error on any mismatch.
void verify_totals(const LatticeState& s);

/// -J sum(sigma sigma) - h sum(sigma) + kappa sum S (1 - sigma)/2, ring bonds included.
double reduced_energy(const LatticeState& s, double J, double h, double kappa);

struct SampleRecord {
  std::int64_t sweep = 0;
  std::int64_t M = 0;
  std::int64_t Q = 0;
};

struct TimeSeries {
  SimConfig config;
  std::int64_t N = 0;
  std::vector<SampleRecord> records;
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> histogram;  ///< (M, Q) -> count

  std::map<std::int64_t, std::uint64_t> m_histogram() const;
  double mean_m() const;
};

/// Alternates spin_sweep with the configured salt move and records (M, Q)
/// every `thinning` sweeps after burn-in.
TimeSeries run(const SimConfig& cfg);

/// Lever-rule estimate of the minority-phase fraction from the mean magnetization
/// per site and the supplied m_star, clamped to [0, 1].
double droplet_fraction_estimate(const TimeSeries& series, double m_star);

void write_series_csv(const TimeSeries& series, std::ostream& os);
void write_histogram_csv(const TimeSeries& series, std::ostream& os);

}  // namespace saltice
