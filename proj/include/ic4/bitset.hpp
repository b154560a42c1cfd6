#ifndef IC4_BITSET_HPP
#define IC4_BITSET_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ic4 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;
inline constexpr std::size_t kNoBit = static_cast<std::size_t>(-1);

constexpr auto words_for(std::size_t bits) -> std::size_t { return (bits + kWordBits - 1) / kWordBits; }

inline auto test_bit(std::span<const Word> w, std::size_t i) -> bool {
  return (w[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline void set_bit(std::span<Word> w, std::size_t i) { w[i / kWordBits] |= Word{1} << (i % kWordBits); }

inline void clear_bit(std::span<Word> w, std::size_t i) { w[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

inline auto popcount(std::span<const Word> w) -> std::size_t {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

inline auto and_popcount(std::span<const Word> a, std::span<const Word> b) -> std::size_t {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// First set bit at position >= from, or kNoBit.
inline auto next_bit(std::span<const Word> w, std::size_t from) -> std::size_t {
  std::size_t wi = from / kWordBits;
  if (wi >= w.size()) return kNoBit;
  Word cur = w[wi] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (cur) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
    if (++wi >= w.size()) return kNoBit;
    cur = w[wi];
  }
}

template <typename F>
void for_each_bit(std::span<const Word> w, F&& f) {
  for (std::size_t wi = 0; wi < w.size(); ++wi) {
    Word cur = w[wi];
    while (cur) {
      f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(cur)));
      cur &= cur - 1;
    }
  }
}

/// Owning fixed-length bitset.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), w_(words_for(bits), 0) {}

  auto size() const -> std::size_t { return bits_; }
  auto words() -> std::span<Word> { return w_; }
  auto words() const -> std::span<const Word> { return w_; }

  auto test(std::size_t i) const -> bool { return test_bit(w_, i); }
  void set(std::size_t i) { set_bit(w_, i); }
  void reset(std::size_t i) { clear_bit(w_, i); }
  void clear() { std::fill(w_.begin(), w_.end(), Word{0}); }
  auto count() const -> std::size_t { return popcount(w_); }
  auto next(std::size_t from) const -> std::size_t { return next_bit(w_, from); }
  auto first() const -> std::size_t { return next_bit(w_, 0); }

  auto operator==(const Bitset&) const -> bool = default;

  auto to_vector() const -> std::vector<std::uint32_t> {
    std::vector<std::uint32_t> out;
    for_each_bit(w_, [&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<Word> w_;
};

}  // namespace ic4

#endif
