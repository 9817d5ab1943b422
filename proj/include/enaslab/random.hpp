#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace enaslab {

/// SplitMix64 finalizer. Used to derive statistically independent seeds
/// from structured keys (master seed, cell coordinates, trial index).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream-indexed seed derivation: every distinct key tuple yields its own
/// stream, independent of the order in which streams are consumed.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(master);
  for (const std::uint64_t k : keys) h = mix64(h ^ mix64(k));
  return h;
}

/// Random stream owned by exactly one consumer. Wraps mt19937_64 (whose
/// output sequence is fixed by the standard) and implements the unit
/// uniform and bounded integer draws itself so results do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on the closed range [lo, hi]. Unbiased (rejection).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return lo + static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range + 1) % range;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return lo + static_cast<std::int64_t>(x % range);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace enaslab
