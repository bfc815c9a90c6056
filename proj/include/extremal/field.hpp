#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "extremal/rng.hpp"

namespace extremal {

/// Element of F_q encoded as an integer in [0, q).
///
/// For q = p the value is the residue mod p. For q = p^e (e > 1) the value
/// is sum c_i p^i, where c_0 + c_1 y + ... + c_{e-1} y^{e-1} is the residue
/// polynomial in F_p[y]/(m(y)).
struct FieldElement {
  std::uint32_t value = 0;

  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// The finite field F_q for a prime power q <= 2^16.
///
/// Immutable and cheap to copy; extension-field tables are shared.
class FieldSpec {
 public:
  /// Builds F_q. For e > 1 the modulus is the first monic irreducible of
  /// degree e when monic polynomials y^e + c_{e-1} y^{e-1} + ... + c_0 are
  /// ordered by the integer c_0 + c_1 p + ... + c_{e-1} p^{e-1}.
  /// Throws NotAPrimePower, or InvalidArgument for q < 2 or q > 2^16.
  explicit FieldSpec(std::uint64_t q);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  bool is_prime_field() const { return e_ == 1; }
  /// Coefficients c_0..c_e of the modulus (c_e = 1); empty when e = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// Checked conversion from an integer in [0, q).
  FieldElement element(std::uint64_t value) const;
  /// Image of an integer under Z -> F_p -> F_q.
  FieldElement from_integer(std::int64_t n) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws DivisionByZero for a = 0.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t exp) const;

  /// sum_i a[i] * b[i]; both spans have the same length.
  FieldElement dot(std::span<const FieldElement> a, std::span<const FieldElement> b) const;

  /// Base-p digits c_0..c_{e-1} of the encoding.
  std::vector<std::uint32_t> decode(FieldElement a) const;
  FieldElement encode(std::span<const std::uint32_t> digits) const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.q_ == b.q_; }

 private:
  struct Tables;

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  unsigned e_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::shared_ptr<const Tables> tables_;
};

/// (p, e) with q = p^e, or nullopt-like {0, 0} when q is not a prime power.
struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
};
PrimePower prime_power_decomposition(std::uint64_t q);
bool is_prime_power(std::uint64_t q);

/// Uniform element of F_q; consumes one counted field draw.
FieldElement sample_uniform(const FieldSpec& field, Rng& rng);

/// Smallest prime power q with q^exponent >= n, and n_i = q^exponent.
/// Bertrand's postulate gives n <= n_i <= 2^exponent * n.
struct ConstructionSize {
  std::uint64_t q = 0;
  std::uint64_t n_i = 0;
};
ConstructionSize next_construction_size(std::uint64_t n, unsigned exponent);

}  // namespace extremal
