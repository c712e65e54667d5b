#include <saltice/philox.hpp>

namespace saltice {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::uint64_t bits53(const Philox4x32::Counter& b) {
  return ((static_cast<std::uint64_t>(b[0]) << 32) | b[1]) >> 11;
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double RandomStream::uniform(std::uint32_t index, std::uint32_t sweep, DrawTag tag,
                             std::uint32_t sub) const {
  return static_cast<double>(bits53(block(index, sweep, tag, sub))) * 0x1.0p-53;
}

double RandomStream::open_uniform(std::uint32_t index, std::uint32_t sweep, DrawTag tag,
                                  std::uint32_t sub) const {
  return (static_cast<double>(bits53(block(index, sweep, tag, sub))) + 0.5) * 0x1.0p-53;
}

std::uint32_t RandomStream::below(std::uint32_t n, std::uint32_t index, std::uint32_t sweep,
                                  DrawTag tag, std::uint32_t sub) const {
  // 64-bit multiply-shift; the bias is below 2^-32 for every n that fits a lattice.
  const auto b = block(index, sweep, tag, sub);
  const std::uint64_t high = static_cast<std::uint64_t>(b[0]) * n;
  const std::uint64_t low = static_cast<std::uint64_t>(b[1]) * n;
  return static_cast<std::uint32_t>((high + (low >> 32)) >> 32);
}

}  // namespace saltice
