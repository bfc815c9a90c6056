#include "extremal/serial.hpp"

#include <algorithm>

#include "extremal/combinatorics.hpp"

namespace extremal::serial {

FieldElement evaluate_naive(const FieldSpec& field, const MPoly& f, std::span<const FieldElement> x) {
  const MonomialBasis& basis = f.basis();
  FieldElement acc = field.zero();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const FieldElement c = f.coeffs()[i];
    if (c.value == 0) continue;
    FieldElement term = c;
    const auto exps = basis.exponents(i);
    for (std::size_t j = 0; j < exps.size(); ++j) term = field.mul(term, field.pow(x[j], exps[j]));
    acc = field.add(acc, term);
  }
  return acc;
}

ColouredBipartiteGraph from_polynomials(const std::vector<std::vector<MPoly>>& classes, const FieldSpec& field,
                                        unsigned k_vars) {
  std::vector<std::size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.size());
  const std::uint64_t points = ipow(field.order(), k_vars);
  ColouredBipartiteGraph g(sizes, points);
  std::size_t v = 0;
  for (const auto& cls : classes) {
    for (const auto& f : cls) {
      for (std::uint64_t i = 0; i < points; ++i) {
        const Point x = point_at(field, k_vars, i);
        if (evaluate_naive(field, f, x).value == 0) g.add_edge(v, i);
      }
      ++v;
    }
  }
  return g;
}

Bitset zero_set_bits(std::span<const MPoly> fs, const FieldSpec& field) {
  if (fs.empty()) throw InvalidArgument("zero set of an empty system");
  const unsigned k = fs[0].num_vars();
  const std::uint64_t points = ipow(field.order(), k);
  Bitset out(points);
  for (std::uint64_t i = 0; i < points; ++i) {
    const Point x = point_at(field, k, i);
    bool all = true;
    for (const auto& f : fs) all = all && evaluate_naive(field, f, x).value == 0;
    if (all) out.set(i);
  }
  return out;
}

namespace {

struct Tally {
  VerificationReport& r;
  std::size_t cap;
  std::vector<Witness> complete;
  std::vector<Witness> sound;
  std::uint64_t min_complete = ~std::uint64_t{0};

  void add(std::vector<Witness>& list, const char* clause, std::span<const std::size_t> tuple, std::uint64_t size) {
    if (list.size() < cap) list.push_back({clause, {tuple.begin(), tuple.end()}, size});
  }
  void finish() {
    r.min_complete = r.complete_checked ? min_complete : 0;
    r.witnesses = complete;
    r.witnesses.insert(r.witnesses.end(), sound.begin(), sound.end());
  }
};

VerificationReport header(const ColouredBipartiteGraph& g, GraphKind kind, unsigned k) {
  VerificationReport r;
  r.kind = kind;
  r.mode = VerifyMode::exhaustive;
  r.k = k;
  r.num_left = g.num_left();
  r.b_size = g.b_size();
  r.t = g.params().t;
  r.s = g.params().s;
  r.p = g.params().p;
  r.soundness_vacuous = at_most(g.b_size(), g.params().s);
  return r;
}

}  // namespace

VerificationReport verify_threshold(const ColouredBipartiteGraph& g, unsigned k, std::size_t max_witnesses) {
  VerificationReport r = header(g, GraphKind::threshold, k);
  Tally tally{r, max_witnesses, {}, {}};
  const std::size_t n = g.num_left();
  r.complete_population = n >= k ? binomial(n, k) : 0;
  r.sound_population = n >= k + 1 ? binomial(n, k + 1) : 0;

  for (unsigned size : {k, k + 1}) {
    if (n < size) continue;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    do {
      const std::uint64_t z = common_neighbourhood(g, idx).count();
      if (size == k) {
        ++r.complete_checked;
        tally.min_complete = std::min(tally.min_complete, z);
        r.max_complete = std::max(r.max_complete, z);
        if (!at_least(z, r.t)) {
          ++r.complete_violations;
          tally.add(tally.complete, "completeness", idx, z);
        }
      } else {
        ++r.sound_checked;
        r.max_sound = std::max(r.max_sound, z);
        if (!at_most(z, r.s)) {
          ++r.sound_violations;
          tally.add(tally.sound, "soundness", idx, z);
        }
      }
    } while (next_combination(idx, n));
  }
  tally.finish();
  return r;
}

VerificationReport verify_panchromatic(const ColouredBipartiteGraph& g, std::size_t max_witnesses) {
  const auto k = static_cast<unsigned>(g.num_classes());
  VerificationReport r = header(g, GraphKind::panchromatic, k);
  Tally tally{r, max_witnesses, {}, {}};
  const std::size_t n = g.num_left();
  if (n < k) return r;

  // Every k-subset of A in lexicographic order, classified by its colours.
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  do {
    std::vector<std::size_t> colours;
    for (auto v : idx) colours.push_back(g.class_of(v));
    std::sort(colours.begin(), colours.end());
    const bool transversal = std::adjacent_find(colours.begin(), colours.end()) == colours.end();
    const std::uint64_t z = common_neighbourhood(g, idx).count();
    if (transversal) {
      ++r.complete_population;
      ++r.complete_checked;
      tally.min_complete = std::min(tally.min_complete, z);
      r.max_complete = std::max(r.max_complete, z);
      if (static_cast<__int128>(z) * r.t.den() == r.t.num()) ++r.exact_t_count;
      if (!at_most(z, r.t)) {
        ++r.complete_violations;
        tally.add(tally.complete, "completeness", idx, z);
      }
    } else {
      ++r.sound_population;
      ++r.sound_checked;
      r.max_sound = std::max(r.max_sound, z);
      if (!at_most(z, r.s)) {
        ++r.sound_violations;
        tally.add(tally.sound, "soundness", idx, z);
      }
    }
  } while (next_combination(idx, n));
  tally.finish();
  return r;
}

namespace {

std::uint64_t intersection_size(const std::vector<Bitset>& sets, std::span<const std::size_t> idx,
                                std::size_t universe) {
  Bitset acc(universe, true);
  for (auto i : idx) acc &= sets[i];
  return acc.count();
}

}  // namespace

Solution solve_max_intersection(const SetSystemInstance& inst, unsigned k) {
  const auto& sets = inst.collections.at(0);
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Solution best{idx, intersection_size(sets, idx, inst.universe_size)};
  while (next_combination(idx, sets.size())) {
    const auto v = intersection_size(sets, idx, inst.universe_size);
    if (v > best.value) best = {idx, v};
  }
  return best;
}

Solution solve_min_coverage(const SetSystemInstance& inst, unsigned k) {
  const auto& sets = inst.collections.at(0);
  auto union_size = [&](std::span<const std::size_t> idx) {
    Bitset acc(inst.universe_size);
    for (auto i : idx) acc |= sets[i];
    return static_cast<std::uint64_t>(acc.count());
  };
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Solution best{idx, union_size(idx)};
  while (next_combination(idx, sets.size())) {
    const auto v = union_size(idx);
    if (v < best.value) best = {idx, v};
  }
  return best;
}

Solution solve_panchromatic(const SetSystemInstance& inst) {
  std::vector<std::size_t> radix;
  for (const auto& c : inst.collections) radix.push_back(c.size());
  auto value = [&](std::span<const std::size_t> idx) {
    Bitset acc(inst.universe_size, true);
    for (std::size_t r = 0; r < idx.size(); ++r) acc &= inst.collections[r][idx[r]];
    return static_cast<std::uint64_t>(acc.count());
  };
  std::vector<std::size_t> idx(radix.size(), 0);
  Solution best{idx, value(idx)};
  while (next_product(idx, radix)) {
    const auto v = value(idx);
    if (v > best.value) best = {idx, v};
  }
  return best;
}

MaxCoverSolution solve_maxcover(const MaxCoverInstance& inst) {
  std::vector<std::size_t> idx(inst.left_sizes.size(), 0);
  MaxCoverSolution best;
  best.labeling = idx;
  best.covered = covered_super_nodes(inst, idx);
  while (next_product(idx, inst.left_sizes)) {
    const auto v = covered_super_nodes(inst, idx);
    if (v > best.covered) {
      best.labeling = idx;
      best.covered = v;
    }
  }
  best.fraction = Rational(static_cast<std::int64_t>(best.covered), static_cast<std::int64_t>(inst.right_sizes.size()));
  return best;
}

ZHistogram bezout_exact(unsigned k, std::span<const unsigned> degrees, std::uint64_t q) {
  const FieldSpec field(q);
  ZHistogram h;
  h.k = k;
  h.degrees.assign(degrees.begin(), degrees.end());
  h.q = q;
  h.exact = true;

  std::vector<std::vector<MPoly>> spaces;
  for (auto d : degrees) {
    auto& space = spaces.emplace_back();
    for (const auto& f : enumerate_all(MonomialBasis::make(k, d), field)) space.push_back(f);
  }
  std::vector<std::size_t> radix;
  for (const auto& s : spaces) radix.push_back(s.size());
  std::vector<std::size_t> idx(spaces.size(), 0);
  std::vector<MPoly> system;
  do {
    system.clear();
    for (std::size_t i = 0; i < idx.size(); ++i) system.push_back(spaces[i][idx[i]]);
    ++h.counts[serial::zero_set_bits(system, field).count()];
    ++h.trials;
  } while (next_product(idx, radix));
  return h;
}

VanishResult vanish_probability_exact(unsigned k, unsigned d, std::uint64_t q, std::span<const Point> points) {
  const FieldSpec field(q);
  VanishResult out;
  for (const auto& f : enumerate_all(MonomialBasis::make(k, d), field)) {
    ++out.total;
    bool all = true;
    for (const auto& x : points) all = all && evaluate_naive(field, f, x).value == 0;
    out.vanishing += all ? 1 : 0;
  }
  out.probability = Rational(static_cast<std::int64_t>(out.vanishing), static_cast<std::int64_t>(out.total));
  const std::uint64_t m = points.size();
  out.hypotheses_hold = q > (m < 2 ? 0 : m * (m - 1) / 2) && std::uint64_t{d} + 1 >= m;
  return out;
}

}  // namespace extremal::serial
