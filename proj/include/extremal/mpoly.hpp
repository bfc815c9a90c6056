#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "extremal/bitset.hpp"
#include "extremal/errors.hpp"
#include "extremal/field.hpp"
#include "extremal/rng.hpp"

namespace extremal {

/// A point of F_q^k.
using Point = std::vector<FieldElement>;

/// Number of monomials in k variables of total degree <= d, i.e. C(k+d, k).
/// Throws Overflow when it does not fit in 64 bits.
std::uint64_t monomial_count(unsigned k, unsigned d);

/// The monomials X_1^a_1 ... X_k^a_k with sum a_i <= d, in graded order:
/// total degree ascending, then exponent vectors in descending lexicographic
/// order (so X_1 precedes X_2). For k = 2, d = 2 this is
/// 1, X1, X2, X1^2, X1 X2, X2^2.
///
/// Because the grades come first, the basis for degree d is a prefix of the
/// basis for any D >= d; embedding is zero-padding.
class MonomialBasis {
 public:
  MonomialBasis(unsigned k, unsigned d);

  static std::shared_ptr<const MonomialBasis> make(unsigned k, unsigned d) {
    return std::make_shared<const MonomialBasis>(k, d);
  }

  unsigned num_vars() const { return k_; }
  unsigned max_degree() const { return d_; }
  std::size_t size() const { return size_; }

  std::span<const std::uint16_t> exponents(std::size_t i) const {
    return {exps_.data() + i * k_, k_};
  }
  unsigned total_degree(std::size_t i) const { return degrees_[i]; }
  /// Index of an exponent vector; throws InvalidArgument if absent.
  std::size_t index_of(std::span<const std::uint16_t> exponents) const;

  /// Every monomial except 1 is parent(i) * X_{var(i)}, with parent(i) < i.
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  unsigned var(std::size_t i) const { return var_[i]; }

  /// out[i] = value of monomial i at x; out.size() == size().
  void monomial_values(const FieldSpec& field, std::span<const FieldElement> x,
                       std::span<FieldElement> out) const;

 private:
  unsigned k_;
  unsigned d_;
  std::size_t size_;
  std::vector<std::uint16_t> exps_;
  std::vector<std::uint16_t> degrees_;
  std::vector<std::size_t> parent_;
  std::vector<unsigned> var_;
};

/// Dense polynomial over F_q with coefficients aligned to a MonomialBasis.
class MPoly {
 public:
  MPoly(std::shared_ptr<const MonomialBasis> basis, std::vector<FieldElement> coeffs);

  static MPoly zero(std::shared_ptr<const MonomialBasis> basis);
  static MPoly constant(std::shared_ptr<const MonomialBasis> basis, FieldElement c);
  /// Sum of coefficient * monomial terms given as exponent vectors.
  static MPoly from_terms(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field,
                          std::initializer_list<std::pair<std::vector<std::uint16_t>, std::int64_t>> terms);

  const MonomialBasis& basis() const { return *basis_; }
  const std::shared_ptr<const MonomialBasis>& basis_ptr() const { return basis_; }
  std::span<const FieldElement> coeffs() const { return coeffs_; }
  unsigned num_vars() const { return basis_->num_vars(); }
  unsigned degree_bound() const { return basis_->max_degree(); }
  bool is_zero() const;
  /// Largest total degree with a nonzero coefficient, or -1 for zero.
  int actual_degree() const;

  /// Same polynomial over the basis (k, degree); degree >= degree_bound().
  MPoly embed(unsigned degree) const;

  friend bool operator==(const MPoly& a, const MPoly& b);

 private:
  friend class PolynomialRange;

  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<FieldElement> coeffs_;
};

/// Uniform polynomial of the basis: one field draw per coefficient, in basis order.
MPoly sample_mpoly(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field, Rng& rng);

FieldElement evaluate(const FieldSpec& field, const MPoly& f, std::span<const FieldElement> x);

/// f + g over the larger of the two bases.
MPoly add_mpoly(const FieldSpec& field, const MPoly& f, const MPoly& g);
MPoly negate(const FieldSpec& field, const MPoly& f);
MPoly sub_mpoly(const FieldSpec& field, const MPoly& f, const MPoly& g);

/// |F_q^k|, throwing BudgetExceeded above budget.
std::uint64_t point_count(const FieldSpec& field, unsigned k, std::uint64_t budget = kDefaultBudget);

/// Points of F_q^k are indexed lexicographically with X_1 most significant:
/// index = x_1 q^{k-1} + ... + x_k.
Point point_at(const FieldSpec& field, unsigned k, std::uint64_t index);
std::uint64_t point_index(const FieldSpec& field, std::span<const FieldElement> x);

/// Monomial values of one basis at every point of F_q^k, row-major by point
/// index. Evaluating a polynomial at every point is then one dot product per
/// row, O(q^k r) multiplications in total.
class PointTable {
 public:
  PointTable(const FieldSpec& field, std::shared_ptr<const MonomialBasis> basis,
             std::uint64_t budget = kDefaultBudget);

  std::size_t num_points() const { return num_points_; }
  std::size_t width() const { return basis_->size(); }
  const MonomialBasis& basis() const { return *basis_; }
  std::span<const FieldElement> row(std::size_t point) const {
    return {values_.data() + point * width(), width()};
  }

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::size_t num_points_;
  std::vector<FieldElement> values_;
};

/// Common zeros of fs in F_q^k, as a bitset over point indices.
/// All fs share num_vars; degrees may differ. Throws BudgetExceeded if
/// q^k > budget.
Bitset zero_set_bits(std::span<const MPoly> fs, const FieldSpec& field, std::uint64_t budget = kDefaultBudget);

/// Common zeros of fs in canonical point order.
std::vector<Point> zero_set(std::span<const MPoly> fs, const FieldSpec& field, std::uint64_t budget = kDefaultBudget);

/// All q^r polynomials of a basis in coefficient-lexicographic order
/// (coefficient of 1 most significant, last basis monomial fastest).
class PolynomialRange {
 public:
  PolynomialRange(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field,
                  std::uint64_t budget = kDefaultBudget);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = MPoly;
    using difference_type = std::ptrdiff_t;
    using pointer = const MPoly*;
    using reference = const MPoly&;

    iterator() = default;
    const MPoly& operator*() const { return *current_; }
    const MPoly* operator->() const { return &*current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.remaining_ == b.remaining_; }

   private:
    friend class PolynomialRange;
    std::shared_ptr<MPoly> current_;
    std::uint32_t q_ = 0;
    std::uint64_t remaining_ = 0;
  };

  iterator begin() const;
  iterator end() const { return iterator{}; }
  std::uint64_t size() const { return count_; }

 private:
  static std::vector<FieldElement>& coeffs_of(MPoly& f) { return f.coeffs_; }

  std::shared_ptr<const MonomialBasis> basis_;
  std::uint32_t q_;
  std::uint64_t count_;
};

PolynomialRange enumerate_all(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field,
                              std::uint64_t budget = kDefaultBudget);

}  // namespace extremal
