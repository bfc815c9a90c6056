#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace extremal {

/// a*b, or nullopt on uint64 overflow.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);
/// base^exp, or nullopt on uint64 overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);
/// C(n, k), or nullopt on uint64 overflow.
std::optional<std::uint64_t> checked_binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k); throws Overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
/// base^exp; throws Overflow.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Advances a strictly increasing index tuple over [0, n) to the next one in
/// lexicographic order. Returns false after the last tuple.
bool next_combination(std::span<std::size_t> idx, std::size_t n);

/// Advances a mixed-radix counter (last digit fastest). Returns false on wrap.
bool next_product(std::span<std::size_t> idx, std::span<const std::size_t> radix);

/// Unranks the r-th k-subset of [0, n) in lexicographic order.
std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k);

/// 95% Wilson score interval for `successes` out of `trials`.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

}  // namespace extremal
