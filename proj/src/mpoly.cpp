#include "extremal/mpoly.hpp"

#include <algorithm>
#include <map>

#include "extremal/combinatorics.hpp"

namespace extremal {

namespace {

constexpr unsigned kMaxDegree = 0xffff;

void append_grade(unsigned k, unsigned remaining, std::vector<std::uint16_t>& prefix,
                  std::vector<std::uint16_t>& out) {
  if (prefix.size() + 1 == k) {
    prefix.push_back(static_cast<std::uint16_t>(remaining));
    out.insert(out.end(), prefix.begin(), prefix.end());
    prefix.pop_back();
    return;
  }
  for (unsigned a = remaining + 1; a-- > 0;) {
    prefix.push_back(static_cast<std::uint16_t>(a));
    append_grade(k, remaining - a, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::uint64_t monomial_count(unsigned k, unsigned d) {
  auto v = checked_binomial(static_cast<std::uint64_t>(k) + d, k);
  if (!v) throw Overflow("monomial count C(" + std::to_string(k + d) + ", " + std::to_string(k) + ") overflows");
  return *v;
}

MonomialBasis::MonomialBasis(unsigned k, unsigned d) : k_(k), d_(d) {
  if (k == 0) throw InvalidArgument("polynomials need at least one variable");
  if (d > kMaxDegree) throw InvalidArgument("degree bound above 65535");
  const std::uint64_t r = monomial_count(k, d);
  if (r > (std::uint64_t{1} << 32)) throw Overflow("monomial basis of size " + std::to_string(r) + " is infeasible");
  size_ = static_cast<std::size_t>(r);
  exps_.reserve(size_ * k_);
  std::vector<std::uint16_t> prefix;
  for (unsigned g = 0; g <= d; ++g) append_grade(k, g, prefix, exps_);

  degrees_.resize(size_);
  parent_.assign(size_, 0);
  var_.assign(size_, 0);
  std::map<std::vector<std::uint16_t>, std::size_t> lookup;
  for (std::size_t i = 0; i < size_; ++i) {
    auto e = exponents(i);
    unsigned deg = 0;
    for (auto a : e) deg += a;
    degrees_[i] = static_cast<std::uint16_t>(deg);
    lookup.emplace(std::vector<std::uint16_t>(e.begin(), e.end()), i);
  }
  for (std::size_t i = 1; i < size_; ++i) {
    std::vector<std::uint16_t> e(exponents(i).begin(), exponents(i).end());
    unsigned j = 0;
    while (e[j] == 0) ++j;
    --e[j];
    parent_[i] = lookup.at(e);
    var_[i] = j;
  }
}

std::size_t MonomialBasis::index_of(std::span<const std::uint16_t> e) const {
  if (e.size() != k_) throw InvalidArgument("exponent vector has the wrong length");
  unsigned deg = 0;
  for (auto a : e) deg += a;
  if (deg > d_) throw InvalidArgument("monomial degree exceeds the basis degree");
  const std::size_t start = deg == 0 ? 0 : static_cast<std::size_t>(monomial_count(k_, deg - 1));
  const std::size_t stop = static_cast<std::size_t>(monomial_count(k_, deg));
  for (std::size_t i = start; i < stop; ++i) {
    if (std::equal(e.begin(), e.end(), exponents(i).begin())) return i;
  }
  throw InvalidArgument("monomial not found in basis");
}

void MonomialBasis::monomial_values(const FieldSpec& field, std::span<const FieldElement> x,
                                    std::span<FieldElement> out) const {
  out[0] = field.one();
  for (std::size_t i = 1; i < size_; ++i) out[i] = field.mul(out[parent_[i]], x[var_[i]]);
}

MPoly::MPoly(std::shared_ptr<const MonomialBasis> basis, std::vector<FieldElement> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size()) throw InvalidArgument("coefficient count does not match the basis size");
}

MPoly MPoly::zero(std::shared_ptr<const MonomialBasis> basis) {
  const std::size_t r = basis->size();
  return MPoly(std::move(basis), std::vector<FieldElement>(r));
}

MPoly MPoly::constant(std::shared_ptr<const MonomialBasis> basis, FieldElement c) {
  MPoly f = zero(std::move(basis));
  f.coeffs_[0] = c;
  return f;
}

MPoly MPoly::from_terms(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field,
                        std::initializer_list<std::pair<std::vector<std::uint16_t>, std::int64_t>> terms) {
  MPoly f = zero(basis);
  for (const auto& [e, c] : terms) {
    const std::size_t i = basis->index_of(e);
    f.coeffs_[i] = field.add(f.coeffs_[i], field.from_integer(c));
  }
  return f;
}

bool MPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](FieldElement c) { return c.value == 0; });
}

int MPoly::actual_degree() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    if (coeffs_[i].value != 0) return static_cast<int>(basis_->total_degree(i));
  return -1;
}

MPoly MPoly::embed(unsigned degree) const {
  if (degree == degree_bound()) return *this;
  if (degree < degree_bound()) throw InvalidArgument("cannot embed into a smaller degree bound");
  auto target = MonomialBasis::make(num_vars(), degree);
  std::vector<FieldElement> c(target->size());
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin());
  return MPoly(std::move(target), std::move(c));
}

bool operator==(const MPoly& a, const MPoly& b) {
  return a.num_vars() == b.num_vars() && a.degree_bound() == b.degree_bound() && a.coeffs_ == b.coeffs_;
}

MPoly sample_mpoly(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field, Rng& rng) {
  std::vector<FieldElement> c(basis->size());
  for (auto& x : c) x = sample_uniform(field, rng);
  return MPoly(std::move(basis), std::move(c));
}

FieldElement evaluate(const FieldSpec& field, const MPoly& f, std::span<const FieldElement> x) {
  if (x.size() != f.num_vars()) throw InvalidArgument("point dimension does not match the polynomial");
  std::vector<FieldElement> values(f.basis().size());
  f.basis().monomial_values(field, x, values);
  return field.dot(f.coeffs(), values);
}

MPoly add_mpoly(const FieldSpec& field, const MPoly& f, const MPoly& g) {
  if (f.num_vars() != g.num_vars()) throw InvalidArgument("adding polynomials in different variable counts");
  const MPoly& big = f.degree_bound() >= g.degree_bound() ? f : g;
  const MPoly& small = f.degree_bound() >= g.degree_bound() ? g : f;
  std::vector<FieldElement> c(big.coeffs().begin(), big.coeffs().end());
  auto sc = small.coeffs();
  for (std::size_t i = 0; i < sc.size(); ++i) c[i] = field.add(c[i], sc[i]);
  return MPoly(big.basis_ptr(), std::move(c));
}

MPoly negate(const FieldSpec& field, const MPoly& f) {
  std::vector<FieldElement> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = field.neg(f.coeffs()[i]);
  return MPoly(f.basis_ptr(), std::move(c));
}

MPoly sub_mpoly(const FieldSpec& field, const MPoly& f, const MPoly& g) {
  return add_mpoly(field, f, negate(field, g));
}

std::uint64_t point_count(const FieldSpec& field, unsigned k, std::uint64_t budget) {
  auto n = checked_pow(field.order(), k);
  if (!n || *n > budget) {
    throw BudgetExceeded("enumerating F_" + std::to_string(field.order()) + "^" + std::to_string(k),
                         n.value_or(UINT64_MAX), budget);
  }
  return *n;
}

Point point_at(const FieldSpec& field, unsigned k, std::uint64_t index) {
  Point x(k);
  for (unsigned i = k; i-- > 0;) {
    x[i] = FieldElement{static_cast<std::uint32_t>(index % field.order())};
    index /= field.order();
  }
  return x;
}

std::uint64_t point_index(const FieldSpec& field, std::span<const FieldElement> x) {
  std::uint64_t idx = 0;
  for (auto c : x) idx = idx * field.order() + c.value;
  return idx;
}

PointTable::PointTable(const FieldSpec& field, std::shared_ptr<const MonomialBasis> basis, std::uint64_t budget)
    : basis_(std::move(basis)) {
  const unsigned k = basis_->num_vars();
  num_points_ = static_cast<std::size_t>(point_count(field, k, budget));
  const std::size_t r = basis_->size();
  auto cells = checked_mul(num_points_, r);
  if (!cells || *cells > budget) throw BudgetExceeded("point table", cells.value_or(UINT64_MAX), budget);
  values_.resize(*cells);
  const auto n = static_cast<std::int64_t>(num_points_);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const Point x = point_at(field, k, static_cast<std::uint64_t>(i));
    basis_->monomial_values(field, x, {values_.data() + static_cast<std::size_t>(i) * r, r});
  }
}

Bitset zero_set_bits(std::span<const MPoly> fs, const FieldSpec& field, std::uint64_t budget) {
  if (fs.empty()) throw InvalidArgument("zero_set needs at least one polynomial");
  const unsigned k = fs[0].num_vars();
  unsigned d = 0;
  for (const auto& f : fs) {
    if (f.num_vars() != k) throw InvalidArgument("zero_set polynomials must share the variable count");
    d = std::max(d, f.degree_bound());
  }
  const std::size_t n = static_cast<std::size_t>(point_count(field, k, budget));
  std::vector<MPoly> polys;
  polys.reserve(fs.size());
  for (const auto& f : fs) polys.push_back(f.embed(d));
  const MonomialBasis& basis = polys[0].basis();
  const std::size_t r = basis.size();

  Bitset out(n);
  auto words = out.words();
  const auto nwords = static_cast<std::int64_t>(words.size());
#pragma omp parallel
  {
    std::vector<FieldElement> values(r);
#pragma omp for schedule(static)
    for (std::int64_t w = 0; w < nwords; ++w) {
      Bitset::Word bits = 0;
      const std::size_t first = static_cast<std::size_t>(w) * Bitset::kWordBits;
      const std::size_t last = std::min(n, first + Bitset::kWordBits);
      for (std::size_t i = first; i < last; ++i) {
        basis.monomial_values(field, point_at(field, k, i), values);
        bool all_zero = true;
        for (const auto& f : polys) {
          if (field.dot(f.coeffs(), values).value != 0) {
            all_zero = false;
            break;
          }
        }
        if (all_zero) bits |= Bitset::Word{1} << (i - first);
      }
      words[static_cast<std::size_t>(w)] = bits;
    }
  }
  return out;
}

std::vector<Point> zero_set(std::span<const MPoly> fs, const FieldSpec& field, std::uint64_t budget) {
  const Bitset bits = zero_set_bits(fs, field, budget);
  const unsigned k = fs[0].num_vars();
  std::vector<Point> out;
  for (auto i : bits.indices()) out.push_back(point_at(field, k, i));
  return out;
}

PolynomialRange::PolynomialRange(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field,
                                 std::uint64_t budget)
    : basis_(std::move(basis)), q_(field.order()) {
  auto n = checked_pow(q_, static_cast<unsigned>(basis_->size()));
  if (!n || *n > budget) throw BudgetExceeded("enumerating all polynomials", n.value_or(UINT64_MAX), budget);
  count_ = *n;
}

PolynomialRange::iterator PolynomialRange::begin() const {
  iterator it;
  it.current_ = std::make_shared<MPoly>(MPoly::zero(basis_));
  it.q_ = q_;
  it.remaining_ = count_;
  return it;
}

PolynomialRange::iterator& PolynomialRange::iterator::operator++() {
  if (--remaining_ == 0) {
    current_.reset();
    return *this;
  }
  auto& c = PolynomialRange::coeffs_of(*current_);
  std::size_t i = c.size();
  while (i > 0) {
    --i;
    if (++c[i].value < q_) break;
    c[i].value = 0;
  }
  return *this;
}

PolynomialRange enumerate_all(std::shared_ptr<const MonomialBasis> basis, const FieldSpec& field,
                              std::uint64_t budget) {
  return PolynomialRange(std::move(basis), field, budget);
}

}  // namespace extremal
