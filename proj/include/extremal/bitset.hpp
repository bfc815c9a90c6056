#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace extremal {

/// Fixed-width bitset over [0, size) stored as 64-bit words; bits past
/// size() in the last word are always zero.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size, bool value = false)
      : size_(size), words_(word_count_for(size), value ? ~Word{0} : Word{0}) {
    if (value) clear_tail();
  }

  static std::size_t word_count_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void set_all() {
    for (auto& w : words_) w = ~Word{0};
    clear_tail();
  }
  void reset_all() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  bool is_subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  /// Indices of set bits in increasing order.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void clear_tail() {
    const std::size_t rem = size_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// dst = a & b; returns popcount(dst). All three share a width.
inline std::size_t and_into(std::span<Bitset::Word> dst, std::span<const Bitset::Word> a,
                            std::span<const Bitset::Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = a[i] & b[i];
    c += static_cast<std::size_t>(std::popcount(dst[i]));
  }
  return c;
}

/// popcount(a & b) without materializing the result.
inline std::size_t and_count(std::span<const Bitset::Word> a, std::span<const Bitset::Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// dst = a | b; returns popcount(dst).
inline std::size_t or_into(std::span<Bitset::Word> dst, std::span<const Bitset::Word> a,
                           std::span<const Bitset::Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = a[i] | b[i];
    c += static_cast<std::size_t>(std::popcount(dst[i]));
  }
  return c;
}

}  // namespace extremal
