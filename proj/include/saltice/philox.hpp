#pragma once

#include <array>
#include <cstdint>

namespace saltice {

/// Philox4x32-10 counter-based generator.
/// A block is a pure function of (counter, key), so any draw can be replayed
/// without touching the others.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key);
};

/// What a draw is used for; part of the counter so streams never overlap.
enum class DrawTag : std::uint32_t {
  SpinFlip = 0,
  SaltCount = 1,
  SaltPlacePlus = 2,
  SaltPlaceMinus = 3,
  SaltInit = 4,
  PairSwap = 5,
};

/// Random stream keyed by the seed. Counter words are (index, sweep, tag, sub),
/// so the value for a given site at a given sweep does not depend on how many
/// other draws were made before it.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Philox4x32::Counter block(std::uint32_t index, std::uint32_t sweep, DrawTag tag,
                            std::uint32_t sub = 0) const {
    return Philox4x32::generate({index, sweep, static_cast<std::uint32_t>(tag), sub}, key_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint32_t index, std::uint32_t sweep, DrawTag tag, std::uint32_t sub = 0) const;
  /// Uniform in (0, 1); never returns 0, safe under log.
  double open_uniform(std::uint32_t index, std::uint32_t sweep, DrawTag tag,
                      std::uint32_t sub = 0) const;
  /// Uniform integer in [0, n), n >= 1.
  std::uint32_t below(std::uint32_t n, std::uint32_t index, std::uint32_t sweep, DrawTag tag,
                      std::uint32_t sub = 0) const;

 private:
  Philox4x32::Key key_;
};

}  // namespace saltice
