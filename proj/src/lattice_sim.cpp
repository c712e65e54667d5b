#include <saltice/lattice_sim.hpp>

#include <saltice/exact_ensemble.hpp>
#include <saltice/io.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace saltice {

std::string_view to_string(SaltMove move) {
  return move == SaltMove::HeatBath ? "heat_bath" : "pair_swap";
}

SaltMove parse_salt_move(std::string_view text) {
  if (text == "heat_bath" || text == "heatbath") return SaltMove::HeatBath;
  if (text == "pair_swap" || text == "swap") return SaltMove::PairSwap;
  throw std::invalid_argument("unknown salt move '" + std::string(text) +
                              "' (heat_bath or pair_swap)");
}

void SimConfig::validate() const {
  if (L < 4) throw std::domain_error("simulate: L must be >= 4");
  if (L > 4096) throw std::domain_error("simulate: L must be <= 4096");
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("simulate: c must lie in [0, 1]");
  if (!std::isfinite(J) || !std::isfinite(h) || !std::isfinite(kappa))
    throw std::domain_error("simulate: J, h and kappa must be finite");
  if (burn_in < 0 || sweeps <= burn_in)
    throw std::domain_error("simulate: need sweeps > burn_in >= 0");
  if (sweeps > std::numeric_limits<std::uint32_t>::max())
    throw std::domain_error("simulate: too many sweeps");
  if (thinning < 1) throw std::domain_error("simulate: thinning must be >= 1");
}

int LatticeState::neighbour_sum(int site) const {
  const int r = site / L;
  const int col = site % L;
  const int ring = ring_spin();
  int sum = 0;
  sum += r > 0 ? spins[site - L] : ring;
  sum += r < L - 1 ? spins[site + L] : ring;
  sum += col > 0 ? spins[site - 1] : ring;
  sum += col < L - 1 ? spins[site + 1] : ring;
  return sum;
}

LatticeState init(const SimConfig& cfg) {
  cfg.validate();
  LatticeState s;
  s.L = cfg.L;
  s.bc = cfg.bc;
  const int V = cfg.volume();
  s.spins.assign(V, static_cast<std::int8_t>(s.ring_spin()));
  s.salts.assign(V, 0);
  s.N = salt_total(cfg.c, V);
  if (s.N > V) throw std::domain_error("simulate: more salt than sites");

  const RandomStream rng(cfg.seed);
  std::vector<int> order(V);
  for (int i = 0; i < V; ++i) order[i] = i;
  for (int i = 0; i < s.N; ++i) {
    const int j = i + static_cast<int>(rng.below(V - i, i, 0, DrawTag::SaltInit));
    std::swap(order[i], order[j]);
    s.salts[order[i]] = 1;
  }
  s.M = s.ring_spin() * static_cast<std::int64_t>(V);
  s.Q = s.ring_spin() == 1 ? s.N : 0;
  return s;
}

void spin_sweep(LatticeState& s, const SimConfig& cfg, const RandomStream& rng,
                std::uint32_t sweep) {
  const int V = s.L * s.L;
  for (int x = 0; x < V; ++x) {
    const int sigma = s.spins[x];
    const double delta = 2.0 * sigma * (cfg.J * s.neighbour_sum(x) + cfg.h) +
                         cfg.kappa * s.salts[x] * sigma;
    if (delta > 0.0 && rng.uniform(x, sweep, DrawTag::SpinFlip) >= std::exp(-delta)) continue;
    s.spins[x] = static_cast<std::int8_t>(-sigma);
    s.M -= 2 * sigma;
    if (s.salts[x]) s.Q -= sigma;
  }
}

namespace {

double log_binomial(std::int64_t n, std::int64_t k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void place_uniformly(LatticeState& s, std::vector<int>& sites, std::int64_t count,
                     const RandomStream& rng, std::uint32_t sweep, DrawTag tag) {
  const auto n = static_cast<std::int64_t>(sites.size());
  for (std::int64_t i = 0; i < count; ++i) {
    const auto j = i + rng.below(static_cast<std::uint32_t>(n - i), static_cast<std::uint32_t>(i),
                                 sweep, tag);
    std::swap(sites[i], sites[j]);
    s.salts[sites[i]] = 1;
  }
}

}  // namespace

void salt_heat_bath(LatticeState& s, double kappa, const RandomStream& rng, std::uint32_t sweep) {
  const int V = s.L * s.L;
  std::vector<int> plus_sites;
  std::vector<int> minus_sites;
  plus_sites.reserve(V);
  minus_sites.reserve(V);
  for (int x = 0; x < V; ++x) (s.spins[x] == 1 ? plus_sites : minus_sites).push_back(x);
  const auto n_plus = static_cast<std::int64_t>(plus_sites.size());
  const auto n_minus = static_cast<std::int64_t>(minus_sites.size());

  // Gumbel-max over the admissible Q values.
  const std::int64_t q_lo = std::max<std::int64_t>(0, s.N - n_minus);
  const std::int64_t q_hi = std::min(s.N, n_plus);
  std::int64_t best_q = q_lo;
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t q = q_lo; q <= q_hi; ++q) {
    const double u = rng.open_uniform(static_cast<std::uint32_t>(q), sweep, DrawTag::SaltCount);
    const double score = log_binomial(n_plus, q) + log_binomial(n_minus, s.N - q) + kappa * q -
                         std::log(-std::log(u));
    if (score > best) {
      best = score;
      best_q = q;
    }
  }

  std::fill(s.salts.begin(), s.salts.end(), 0);
  place_uniformly(s, plus_sites, best_q, rng, sweep, DrawTag::SaltPlacePlus);
  place_uniformly(s, minus_sites, s.N - best_q, rng, sweep, DrawTag::SaltPlaceMinus);
  s.Q = best_q;
}

void pair_swap(LatticeState& s, double kappa, const RandomStream& rng, std::uint32_t sweep) {
  const int V = s.L * s.L;
  std::vector<int> salted;
  std::vector<int> empty;
  for (int x = 0; x < V; ++x) (s.salts[x] ? salted : empty).push_back(x);
  if (salted.empty() || empty.empty()) return;
  const auto n_salted = static_cast<std::uint32_t>(salted.size());
  const auto n_empty = static_cast<std::uint32_t>(empty.size());
  for (std::uint32_t a = 0; a < n_salted; ++a) {
    const auto i = rng.below(n_salted, a, sweep, DrawTag::PairSwap, 0);
    const auto j = rng.below(n_empty, a, sweep, DrawTag::PairSwap, 1);
    const int from = salted[i];
    const int to = empty[j];
    // kappa per salt on a minus site
    const double delta = 0.5 * kappa * (s.spins[from] - s.spins[to]);
    if (delta > 0.0 && rng.uniform(a, sweep, DrawTag::PairSwap, 2) >= std::exp(-delta)) continue;
    s.salts[from] = 0;
    s.salts[to] = 1;
    s.Q += (s.spins[to] == 1) - (s.spins[from] == 1);
    salted[i] = to;
    empty[j] = from;
  }
}

void verify_totals(const LatticeState& s) {
  std::int64_t M = 0, N = 0, Q = 0;
  for (std::size_t x = 0; x < s.spins.size(); ++x) {
    M += s.spins[x];
    N += s.salts[x];
    Q += s.salts[x] * (1 + s.spins[x]) / 2;
  }
  if (M != s.M || N != s.N || Q != s.Q)
    throw std::logic_error("lattice totals drifted: (M, N, Q) = (" + std::to_string(s.M) + ", " +
                           std::to_string(s.N) + ", " + std::to_string(s.Q) + ") but recount is (" +
                           std::to_string(M) + ", " + std::to_string(N) + ", " +
                           std::to_string(Q) + ")");
}

double reduced_energy(const LatticeState& s, double J, double h, double kappa) {
  const int ring = s.ring_spin();
  double bonds = 0.0;
  double field = 0.0;
  double salt = 0.0;
  for (int r = 0; r < s.L; ++r) {
    for (int col = 0; col < s.L; ++col) {
      const int x = r * s.L + col;
      const int sigma = s.spins[x];
      // right and down bonds, plus the ring on the top and left edges
      bonds += sigma * (col < s.L - 1 ? s.spins[x + 1] : ring);
      bonds += sigma * (r < s.L - 1 ? s.spins[x + s.L] : ring);
      if (col == 0) bonds += sigma * ring;
      if (r == 0) bonds += sigma * ring;
      field += sigma;
      salt += s.salts[x] * (1 - sigma) / 2;
    }
  }
  return -J * bonds - h * field + kappa * salt;
}

std::map<std::int64_t, std::uint64_t> TimeSeries::m_histogram() const {
  std::map<std::int64_t, std::uint64_t> out;
  for (const auto& [key, count] : histogram) out[key.first] += count;
  return out;
}

double TimeSeries::mean_m() const {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : records) sum += static_cast<double>(r.M);
  return sum / static_cast<double>(records.size());
}

TimeSeries run(const SimConfig& cfg) {
  auto state = init(cfg);
  const RandomStream rng(cfg.seed);
  TimeSeries out;
  out.config = cfg;
  out.N = state.N;
  out.records.reserve(static_cast<std::size_t>((cfg.sweeps - cfg.burn_in) / cfg.thinning));
  for (std::int64_t sweep = 1; sweep <= cfg.sweeps; ++sweep) {
    const auto tag = static_cast<std::uint32_t>(sweep);
    spin_sweep(state, cfg, rng, tag);
    if (cfg.salt_move == SaltMove::HeatBath)
      salt_heat_bath(state, cfg.kappa, rng, tag);
    else
      pair_swap(state, cfg.kappa, rng, tag);
    verify_totals(state);
    if (state.N != out.N) throw std::logic_error("salt total changed during the run");
    if (sweep > cfg.burn_in && (sweep - cfg.burn_in) % cfg.thinning == 0) {
      out.records.push_back({sweep, state.M, state.Q});
      ++out.histogram[{state.M, state.Q}];
    }
  }
  return out;
}

double droplet_fraction_estimate(const TimeSeries& series, double m_star) {
  if (!(m_star > 0.0 && m_star < 1.0)) throw std::domain_error("droplet fraction: m_star outside (0, 1)");
  const double m = series.mean_m() / series.config.volume();
  const double f = series.config.bc == BoundaryCondition::Plus ? (m_star - m) / (2.0 * m_star)
                                                               : (m + m_star) / (2.0 * m_star);
  return std::clamp(f, 0.0, 1.0);
}

namespace {

OutputHeader sim_header(const TimeSeries& series, const char* table) {
  const auto& cfg = series.config;
  OutputHeader h;
  h.command = "simulate";
  h.add("table", table);
  h.add("L", std::to_string(cfg.L));
  h.add("J", cfg.J);
  h.add("kappa", cfg.kappa);
  h.add("c", cfg.c);
  h.add("h", cfg.h);
  h.add("bc", std::string(to_string(cfg.bc)));
  h.add("sweeps", std::to_string(cfg.sweeps));
  h.add("burn_in", std::to_string(cfg.burn_in));
  h.add("thinning", std::to_string(cfg.thinning));
  h.add("salt_move", std::string(to_string(cfg.salt_move)));
  h.add("N", std::to_string(series.N));
  h.seed = cfg.seed;
  return h;
}

}  // namespace

void write_series_csv(const TimeSeries& series, std::ostream& os) {
  write_header(os, sim_header(series, "series"));
  os << "sweep,M,Q\n";
  for (const auto& r : series.records) os << r.sweep << ',' << r.M << ',' << r.Q << '\n';
}

void write_histogram_csv(const TimeSeries& series, std::ostream& os) {
  write_header(os, sim_header(series, "histogram"));
  os << "M,Q,count\n";
  for (const auto& [key, count] : series.histogram)
    os << key.first << ',' << key.second << ',' << count << '\n';
}

}  // namespace saltice
