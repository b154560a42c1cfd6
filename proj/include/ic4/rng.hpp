#ifndef IC4_RNG_HPP
#define IC4_RNG_HPP

#include <cstdint>

namespace ic4 {

/// splitmix64 finalizer.
constexpr auto mix64(std::uint64_t z) -> std::uint64_t {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: value(i) = mix64(seed + (i+1) * golden). Any draw can be
/// recomputed from (seed, i) alone, which keeps generated corpora reproducible across
/// languages and platforms.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  constexpr auto value(std::uint64_t i) const -> std::uint64_t { return mix64(seed_ + (i + 1) * kGolden); }
  constexpr auto next() -> std::uint64_t { return value(counter_++); }

  /// floor(x * bound / 2^64) for the next draw x; bound > 0.
  constexpr auto below(std::uint64_t bound) -> std::uint64_t { return scale(next(), bound); }

  static constexpr auto scale(std::uint64_t x, std::uint64_t bound) -> std::uint64_t {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * bound) >> 64);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace ic4

#endif
