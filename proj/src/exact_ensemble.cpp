#include <saltice/exact_ensemble.hpp>

#include <saltice/io.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace saltice {
namespace {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double bernoulli_entropy(double p) { return xlogx(p) + xlogx(1.0 - p); }

double logsumexp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

}  // namespace

BigInt salt_count(std::int64_t volume, std::int64_t M, std::int64_t N, std::int64_t Q) {
  if (volume < 1) throw std::domain_error("salt_count: volume must be >= 1");
  if (M < -volume || M > volume) throw std::domain_error("salt_count: |M| exceeds the volume");
  if ((volume - M) % 2 != 0)
    throw std::domain_error("salt_count: M = " + std::to_string(M) +
                            " has the wrong parity for volume " + std::to_string(volume));
  if (N < 0 || N > volume) throw std::domain_error("salt_count: N outside [0, volume]");
  const std::int64_t plus = (volume + M) / 2;
  const std::int64_t minus = (volume - M) / 2;
  if (Q < 0 || Q > N || Q > plus || N - Q > minus) return 0;
  return binomial(plus, Q) * binomial(minus, N - Q);
}

double log_big(const BigInt& x) {
  if (x <= 0) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    throw std::domain_error("log_big: negative argument");
  }
  const unsigned top = boost::multiprecision::msb(x);
  const unsigned shift = top > 60 ? top - 60 : 0;
  const BigInt head = x >> shift;
  return std::log(head.convert_to<double>()) + shift * std::log(2.0);
}

std::int64_t salt_total(double c, std::int64_t volume) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("salt concentration outside [0, 1]");
  return static_cast<std::int64_t>(std::floor(c * static_cast<double>(volume) + 1e-9));
}

double entropy_xi(double m, double theta, double c, double eta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("entropy_xi: theta outside [0, 1]");
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("entropy_xi: c outside [0, 1]");
  if (!(std::fabs(m) <= 1.0 - eta)) throw std::domain_error("entropy_xi: |m| > 1 - eta");
  const double plus_salt = 2.0 * theta * c;
  const double minus_salt = 2.0 * (1.0 - theta) * c;
  const double p1 = plus_salt == 0.0 ? 0.0 : plus_salt / (1.0 + m);
  const double p2 = minus_salt == 0.0 ? 0.0 : minus_salt / (1.0 - m);
  if (!(p1 <= 1.0 - eta && p2 <= 1.0 - eta))
    throw std::domain_error("entropy_xi: salt occupation fraction exceeds 1 - eta");
  return -0.5 * (1.0 + m) * bernoulli_entropy(p1) - 0.5 * (1.0 - m) * bernoulli_entropy(p2);
}

double stirling_gap(std::int64_t volume, double m, double theta, double c, double eta) {
  const double xi = entropy_xi(m, theta, c, eta);
  const double v = static_cast<double>(volume);
  auto M = static_cast<std::int64_t>(std::floor(m * v));
  if ((volume - M) % 2 != 0) --M;
  const std::int64_t N = salt_total(c, volume);
  const auto Q = static_cast<std::int64_t>(std::floor(theta * c * v + 1e-9));
  const BigInt count = salt_count(volume, M, N, Q);
  if (count == 0) throw std::domain_error("stirling_gap: no admissible salt placement");
  return std::fabs(log_big(count) / v - xi);
}

// --- enumeration ---------------------------------------------------------------

SpinHistogram enumerate_spins(int L, BoundaryCondition bc, unsigned workers) {
  if (L < 1 || L > kMaxExactSide)
    throw std::domain_error("exact enumeration supports 1 <= L <= " +
                            std::to_string(kMaxExactSide) + ", got L = " + std::to_string(L));
  const int V = L * L;
  const int bonds = 2 * L * (L - 1) + 4 * L;
  const int ring = bc == BoundaryCondition::Plus ? 1 : -1;

  std::vector<std::vector<int>> nbrs(V);
  std::vector<int> ring_links(V, 0);
  for (int r = 0; r < L; ++r) {
    for (int col = 0; col < L; ++col) {
      const int k = r * L + col;
      auto link = [&](int rr, int cc) {
        if (rr < 0 || rr >= L || cc < 0 || cc >= L)
          ++ring_links[k];
        else
          nbrs[k].push_back(rr * L + cc);
      };
      link(r - 1, col);
      link(r + 1, col);
      link(r, col - 1);
      link(r, col + 1);
    }
  }

  using Counts = std::vector<std::vector<std::uint64_t>>;
  auto fresh = [&] { return Counts(V + 1, std::vector<std::uint64_t>(2 * bonds + 1, 0)); };

  // Sites below free_bits walk a Gray code; the rest are fixed by the prefix.
  auto walk = [&](std::uint32_t prefix, int free_bits, Counts& counts) {
    std::array<int, kMaxExactSide * kMaxExactSide> s{};
    for (int k = 0; k < V; ++k)
      s[k] = k >= free_bits && ((prefix >> (k - free_bits)) & 1u) ? 1 : -1;
    int energy = 0;
    int n_plus = 0;
    for (int k = 0; k < V; ++k) {
      n_plus += s[k] == 1;
      energy += s[k] * ring * ring_links[k];
      for (int j : nbrs[k])
        if (j > k) energy += s[k] * s[j];
    }
    ++counts[n_plus][energy + bonds];
    const std::uint64_t end = std::uint64_t{1} << free_bits;
    for (std::uint64_t i = 1; i < end; ++i) {
      const int k = std::countr_zero(i);
      int field = ring * ring_links[k];
      for (int j : nbrs[k]) field += s[j];
      energy -= 2 * s[k] * field;
      n_plus -= s[k];
      s[k] = -s[k];
      ++counts[n_plus][energy + bonds];
    }
  };

  workers = std::max(1u, workers);
  int fixed_bits = 0;
  while (fixed_bits < V && (1u << fixed_bits) < 4 * workers && workers > 1) ++fixed_bits;
  const int free_bits = V - fixed_bits;
  const std::uint32_t prefixes = 1u << fixed_bits;

  std::vector<Counts> partial(workers);
  auto job = [&](unsigned w) {
    partial[w] = fresh();
    for (std::uint32_t p = w; p < prefixes; p += workers) walk(p, free_bits, partial[w]);
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& t : pool) t.join();
  }

  SpinHistogram out{L, bonds, fresh()};
  for (const auto& part : partial)
    for (int n = 0; n <= V; ++n)
      for (std::size_t e = 0; e < part[n].size(); ++e) out.counts[n][e] += part[n][e];
  return out;
}

ExactDistribution exact_distribution(const ExactSpec& spec) {
  if (!std::isfinite(spec.J) || !std::isfinite(spec.h) || !std::isfinite(spec.kappa))
    throw std::domain_error("exact_distribution: J, h and kappa must be finite");
  const auto hist = enumerate_spins(spec.L, spec.bc, spec.workers);
  ExactDistribution out;
  out.spec = spec;
  out.volume = spec.L * spec.L;
  out.N = static_cast<int>(salt_total(spec.c, out.volume));

  std::vector<double> log_weights;
  std::vector<double> terms;
  for (int n_plus = 0; n_plus <= out.volume; ++n_plus) {
    terms.clear();
    for (std::size_t e = 0; e < hist.counts[n_plus].size(); ++e) {
      const auto count = hist.counts[n_plus][e];
      if (count == 0) continue;
      const double bond_sum = static_cast<double>(e) - hist.bonds;
      terms.push_back(std::log(static_cast<double>(count)) + spec.J * bond_sum);
    }
    if (terms.empty()) continue;
    const int M = 2 * n_plus - out.volume;
    const int n_minus = out.volume - n_plus;
    const double spin_part = logsumexp(terms) + spec.h * M;
    for (int Q = std::max(0, out.N - n_minus); Q <= std::min(out.N, n_plus); ++Q) {
      out.entries.push_back({M, Q, 0.0});
      log_weights.push_back(spin_part + log_binomial(n_plus, Q) +
                            log_binomial(n_minus, out.N - Q) + spec.kappa * Q);
    }
  }
  out.log_normalizer = logsumexp(log_weights);
  for (std::size_t i = 0; i < out.entries.size(); ++i)
    out.entries[i].probability = std::exp(log_weights[i] - out.log_normalizer);
  return out;
}

double ExactDistribution::probability(int M, int Q) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{M, Q},
                                   [](const ExactEntry& e, const std::pair<int, int>& key) {
                                     return std::pair{e.M, e.Q} < key;
                                   });
  if (it == entries.end() || it->M != M || it->Q != Q) return 0.0;
  return it->probability;
}

std::map<int, double> ExactDistribution::marginal_m() const {
  std::map<int, double> out;
  for (const auto& e : entries) out[e.M] += e.probability;
  return out;
}

std::map<int, double> ExactDistribution::conditional_q(int M) const {
  std::map<int, double> out;
  double total = 0.0;
  for (const auto& e : entries) {
    if (e.M != M) continue;
    out[e.Q] = e.probability;
    total += e.probability;
  }
  if (total <= 0.0) return {};
  for (auto& [q, p] : out) p /= total;
  return out;
}

double ExactDistribution::mean_m() const {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.M * e.probability;
  return sum;
}

void write_csv(const ExactDistribution& dist, std::ostream& os) {
  OutputHeader h;
  h.command = "oracle";
  h.add("L", std::to_string(dist.spec.L));
  h.add("bc", std::string(to_string(dist.spec.bc)));
  h.add("J", dist.spec.J);
  h.add("kappa", dist.spec.kappa);
  h.add("c", dist.spec.c);
  h.add("h", dist.spec.h);
  h.add("N", std::to_string(dist.N));
  h.add("log_normalizer", format_number(dist.log_normalizer, 17));
  write_header(os, h);
  os << "M,Q,probability\n";
  for (const auto& e : dist.entries)
    os << e.M << ',' << e.Q << ',' << format_number(e.probability, 17) << '\n';
}

}  // namespace saltice
