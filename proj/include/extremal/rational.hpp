#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace extremal {

/// Exact reduced fraction with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Smallest integer >= this.
  std::int64_t ceil() const;
  /// Largest integer <= this.
  std::int64_t floor() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;
  /// Parses "a", "a/b" or "-a/b".
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// value >= threshold, compared exactly (value is an integer count).
inline bool at_least(std::uint64_t value, const Rational& threshold) {
  return static_cast<__int128>(value) * threshold.den() >= static_cast<__int128>(threshold.num());
}

/// value <= threshold, compared exactly.
inline bool at_most(std::uint64_t value, const Rational& threshold) {
  return static_cast<__int128>(value) * threshold.den() <= static_cast<__int128>(threshold.num());
}

}  // namespace extremal
