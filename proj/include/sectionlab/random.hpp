#pragma once

// Counter-based random streams.
//
// Stream derivation recipe (stable across versions of this tool):
//   * the generator is Philox4x32-10;
//   * key        = (seed & 0xffffffff, seed >> 32);
//   * counter    = (block & 0xffffffff, block >> 32, index & 0xffffffff, index >> 32),
//     where block counts 128-bit output blocks from 0;
//   * 32-bit words are consumed in order, a 64-bit draw is (w1 << 32) | w0;
//   * uniform()  = ((u64 >> 11) + 0.5) * 2^-53, which lies in (0, 1);
//   * normal()   = Box-Muller on two uniforms, cos branch first, sin branch cached.
// Seeds for independent roles of one run are derived with mix_seed(), the
// SplitMix64 finalizer applied to root ^ splitmix(tag).

#include <array>
#include <cstdint>
#include <limits>

namespace sectionlab {

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t tag) noexcept;

class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t index) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t index() const noexcept { return index_; }

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  double normal() noexcept;
  double exponential() noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next_u64(); }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

inline RandomStream derive_substream(std::uint64_t seed, std::uint64_t index) noexcept {
  return RandomStream(seed, index);
}

}  // namespace sectionlab
