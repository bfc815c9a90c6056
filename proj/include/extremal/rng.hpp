#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace extremal {

/// Seeded random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard,
/// so a given seed produces the same draws on every conforming platform.
/// Bounded integers are drawn by masking to the smallest power-of-two range
/// covering the bound and rejecting out-of-range values, which is exact
/// (no modulo bias) and also platform independent.
///
/// The stream counts field-element draws so coin usage can be audited.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound); bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform integer in [0, bound), counted as one field draw.
  std::uint64_t field_draw(std::uint64_t bound) {
    ++field_draws_;
    return uniform_below(bound);
  }

  std::uint64_t field_draws() const { return field_draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t field_draws_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of an independent substream:
///   mix64(mix64(master ^ fnv1a(tag)) + mix64(index + 0x9e3779b97f4a7c15)).
/// Consumers use one substream per (role, index) so results do not depend on
/// how work is split across threads.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index);

}  // namespace extremal
