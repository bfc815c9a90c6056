#include "extremal/field.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

#include "extremal/combinatorics.hpp"
#include "extremal/errors.hpp"

namespace extremal {

namespace {

constexpr std::uint64_t kMaxOrder = 1u << 16;

using Poly = std::vector<std::uint32_t>;  // coefficients over F_p, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo a monic polynomial m.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  trim(out);
  return out;
}

// Monic polynomial of the given degree whose lower coefficients are the base-p
// digits of `index` (c_0 least significant).
Poly monic_from_index(std::uint64_t index, unsigned degree, std::uint32_t p) {
  Poly m(degree + 1, 0);
  for (unsigned i = 0; i < degree; ++i) {
    m[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  m[degree] = 1;
  return m;
}

bool is_irreducible(const Poly& m, std::uint32_t p) {
  const unsigned e = static_cast<unsigned>(m.size() - 1);
  for (unsigned deg = 1; deg <= e / 2; ++deg) {
    const std::uint64_t count = ipow(p, deg);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (poly_mod(m, monic_from_index(idx, deg, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

struct FieldSpec::Tables {
  std::vector<std::uint32_t> exp;  // exp[i] = g^i, length 2(q-1) to skip a reduction
  std::vector<std::uint32_t> log;  // log[x] for x != 0
  std::vector<std::uint32_t> negation;
};

PrimePower prime_power_decomposition(std::uint64_t q) {
  if (q < 2) return {};
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return {};
  return {p, e};
}

bool is_prime_power(std::uint64_t q) { return prime_power_decomposition(q).e != 0; }

FieldSpec::FieldSpec(std::uint64_t q) {
  if (q < 2) throw InvalidArgument("field order must be at least 2");
  const PrimePower pp = prime_power_decomposition(q);
  if (pp.e == 0) throw NotAPrimePower(q);
  if (q > kMaxOrder) throw InvalidArgument("field order above 2^16 is not supported");
  q_ = static_cast<std::uint32_t>(q);
  p_ = static_cast<std::uint32_t>(pp.p);
  e_ = pp.e;
  if (e_ == 1) return;

  const std::uint64_t candidates = ipow(p_, e_);
  for (std::uint64_t idx = 0; idx < candidates; ++idx) {
    Poly m = monic_from_index(idx, e_, p_);
    if (is_irreducible(m, p_)) {
      modulus_ = std::move(m);
      break;
    }
  }
  assert(!modulus_.empty());

  auto to_poly = [&](std::uint32_t v) {
    Poly a(e_, 0);
    for (unsigned i = 0; i < e_; ++i) {
      a[i] = v % p_;
      v /= p_;
    }
    trim(a);
    return a;
  };
  auto from_poly = [&](const Poly& a) {
    std::uint32_t v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * p_ + a[i];
    return v;
  };
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    return from_poly(poly_mod(poly_mul(to_poly(a), to_poly(b), p_), modulus_, p_));
  };

  // Primitive element: order exactly q-1, tested against the prime factors of q-1.
  std::vector<std::uint64_t> factors;
  {
    std::uint64_t r = q_ - 1;
    for (std::uint64_t f = 2; f * f <= r; ++f) {
      if (r % f == 0) {
        factors.push_back(f);
        while (r % f == 0) r /= f;
      }
    }
    if (r > 1) factors.push_back(r);
  }
  auto slow_pow = [&](std::uint32_t a, std::uint64_t exp) {
    std::uint32_t result = 1;
    while (exp > 0) {
      if (exp & 1) result = slow_mul(result, a);
      a = slow_mul(a, a);
      exp >>= 1;
    }
    return result;
  };
  std::uint32_t generator = 0;
  for (std::uint32_t g = 2; g < q_; ++g) {
    bool primitive = true;
    for (auto f : factors) {
      if (slow_pow(g, (q_ - 1) / f) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = g;
      break;
    }
  }
  assert(generator != 0);

  auto tables = std::make_shared<Tables>();
  tables->exp.resize(2 * (q_ - 1));
  tables->log.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    tables->exp[i] = x;
    tables->exp[i + q_ - 1] = x;
    tables->log[x] = i;
    x = slow_mul(x, generator);
  }
  tables->negation.resize(q_);
  for (std::uint32_t v = 0; v < q_; ++v) {
    std::uint32_t out = 0, scale = 1, rest = v;
    for (unsigned i = 0; i < e_; ++i) {
      const std::uint32_t digit = rest % p_;
      rest /= p_;
      out += ((p_ - digit) % p_) * scale;
      scale *= p_;
    }
    tables->negation[v] = out;
  }
  tables_ = std::move(tables);
}

FieldElement FieldSpec::element(std::uint64_t value) const {
  if (value >= q_) throw InvalidArgument("field element " + std::to_string(value) + " out of range for q=" + std::to_string(q_));
  return {static_cast<std::uint32_t>(value)};
}

FieldElement FieldSpec::from_integer(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  if (e_ == 1) {
    const std::uint32_t s = a.value + b.value;
    return {s >= q_ ? s - q_ : s};
  }
  if (p_ == 2) return {a.value ^ b.value};
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    const std::uint32_t da = a.value % p_, db = b.value % p_;
    a.value /= p_;
    b.value /= p_;
    std::uint32_t s = da + db;
    if (s >= p_) s -= p_;
    out += s * scale;
    scale *= p_;
  }
  return {out};
}

FieldElement FieldSpec::neg(FieldElement a) const {
  if (e_ == 1) return {a.value == 0 ? 0 : q_ - a.value};
  return {tables_->negation[a.value]};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  if (e_ == 1) return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value) * b.value % q_)};
  if (a.value == 0 || b.value == 0) return {0};
  return {tables_->exp[tables_->log[a.value] + tables_->log[b.value]]};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a.value == 0) throw DivisionByZero();
  if (e_ == 1) return {inv_mod_prime(a.value, q_)};
  const std::uint32_t l = tables_->log[a.value];
  return {tables_->exp[(q_ - 1 - l) % (q_ - 1)]};
}

FieldElement FieldSpec::pow(FieldElement a, std::uint64_t exp) const {
  FieldElement result = one();
  while (exp > 0) {
    if (exp & 1) result = mul(result, a);
    a = mul(a, a);
    exp >>= 1;
  }
  return result;
}

FieldElement FieldSpec::dot(std::span<const FieldElement> a, std::span<const FieldElement> b) const {
  assert(a.size() == b.size());
  if (e_ == 1) {
    // Products are below 2^32, so up to 2^32 terms fit before reduction.
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<std::uint64_t>(a[i].value) * b[i].value;
    return {static_cast<std::uint32_t>(acc % q_)};
  }
  FieldElement acc = zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = add(acc, mul(a[i], b[i]));
  return acc;
}

std::vector<std::uint32_t> FieldSpec::decode(FieldElement a) const {
  std::vector<std::uint32_t> digits(e_);
  for (unsigned i = 0; i < e_; ++i) {
    digits[i] = a.value % p_;
    a.value /= p_;
  }
  return digits;
}

FieldElement FieldSpec::encode(std::span<const std::uint32_t> digits) const {
  if (digits.size() != e_) throw InvalidArgument("wrong digit count for field encoding");
  std::uint32_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw InvalidArgument("digit out of range for field encoding");
    v = v * p_ + digits[i];
  }
  return {v};
}

FieldElement sample_uniform(const FieldSpec& field, Rng& rng) {
  return {static_cast<std::uint32_t>(rng.field_draw(field.order()))};
}

ConstructionSize next_construction_size(std::uint64_t n, unsigned exponent) {
  if (n == 0 || exponent == 0) throw InvalidArgument("next_construction_size needs n >= 1 and exponent >= 1");
  // Smallest x >= 2 with x^exponent >= n.
  std::uint64_t x = 1;
  {
    std::uint64_t lo = 1, hi = n;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      auto pw = checked_pow(mid, exponent);
      if (!pw || *pw >= n) hi = mid;
      else lo = mid + 1;
    }
    x = std::max<std::uint64_t>(lo, 2);
  }
  while (!is_prime_power(x)) ++x;
  return {x, ipow(x, exponent)};
}

}  // namespace extremal
