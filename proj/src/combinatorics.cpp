#include "extremal/combinatorics.hpp"

#include <cmath>

#include "extremal/errors.hpp"

namespace extremal {

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    auto next = checked_mul(out, base);
    if (!next) return std::nullopt;
    out = *next;
  }
  return out;
}

std::optional<std::uint64_t> checked_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays exact: acc is C(n-k+i-1, i-1).
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  auto v = checked_binomial(n, k);
  if (!v) throw Overflow("C(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
  return *v;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  auto v = checked_pow(base, exp);
  if (!v) throw Overflow(std::to_string(base) + "^" + std::to_string(exp) + " overflows");
  return *v;
}

bool next_combination(std::span<std::size_t> idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool next_product(std::span<std::size_t> idx, std::span<const std::size_t> radix) {
  std::size_t i = idx.size();
  while (i > 0) {
    --i;
    if (++idx[i] < radix[i]) return true;
    idx[i] = 0;
  }
  return false;
}

std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t v = next; v < n; ++v) {
      // Number of completions that start with v at this slot.
      const std::uint64_t block = binomial(n - v - 1, k - slot - 1);
      if (rank < block) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return out;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {low, high};
}

}  // namespace extremal
