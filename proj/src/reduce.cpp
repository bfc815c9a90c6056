#include "extremal/reduce.hpp"

#include <algorithm>

#include "extremal/combinatorics.hpp"

namespace extremal {

SetSystemInstance maxcover_to_panchromatic(const MaxCoverInstance& inst, const Rational& c, const Rational& s) {
  inst.validate();
  const auto l = static_cast<std::int64_t>(inst.right_sizes.size());
  SetSystemInstance out;
  out.universe_size = inst.num_right();
  out.coloured = true;
  out.k = static_cast<unsigned>(inst.left_sizes.size());
  out.c = c * Rational(l);
  out.s = s * Rational(l);
  std::size_t v = 0;
  for (auto size : inst.left_sizes) {
    auto& col = out.collections.emplace_back();
    for (std::size_t j = 0; j < size; ++j) col.push_back(inst.adjacency[v++]);
  }
  return out;
}

SetSystemInstance maxcover_to_panchromatic(const MaxCoverInstance& inst) {
  return maxcover_to_panchromatic(inst, inst.c, inst.s);
}

const char* to_string(BijectionMode mode) { return mode == BijectionMode::random ? "random" : "canonical"; }

BijectionMode parse_bijection_mode(const std::string& text) {
  if (text == "canonical") return BijectionMode::canonical;
  if (text == "random") return BijectionMode::random;
  throw InvalidArgument("unknown bijection mode: " + text);
}

PgcResult pgc_compose(const SetSystemInstance& inst, const ColouredBipartiteGraph& h, BijectionMode mode, Rng& rng,
                      std::optional<std::uint64_t> z, std::uint64_t budget) {
  inst.validate();
  if (!inst.coloured) throw InvalidArgument("composition needs a coloured instance");
  const std::size_t k = inst.collections.size();
  if (h.num_classes() != k) {
    throw SizeMismatch("instance has " + std::to_string(k) + " collections but the graph has " +
                       std::to_string(h.num_classes()) + " classes");
  }
  for (std::size_t r = 0; r < k; ++r) {
    if (inst.collections[r].size() != h.class_size(r)) {
      throw SizeMismatch("collection " + std::to_string(r) + " has " + std::to_string(inst.collections[r].size()) +
                         " sets but class " + std::to_string(r) + " has " + std::to_string(h.class_size(r)) +
                         " vertices");
    }
  }

  PgcResult out;
  out.bijections.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    auto& pi = out.bijections[r];
    pi.resize(inst.collections[r].size());
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = i;
    if (mode == BijectionMode::random) {
      for (std::size_t i = pi.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_below(i));
        std::swap(pi[i - 1], pi[j]);
      }
    }
  }
  out.z = z ? *z : monochromatic_number(inst, static_cast<unsigned>(k), budget);

  const std::size_t u_size = inst.universe_size;
  const std::size_t b_size = h.b_size();
  const auto universe = checked_mul(u_size, b_size);
  if (!universe) throw Overflow("composed universe size does not fit in 64 bits");

  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < inst.collections[r].size(); ++i) out.origin.emplace_back(r, i);

  SetSystemInstance& res = out.instance;
  res.universe_size = *universe;
  res.coloured = false;
  res.k = static_cast<unsigned>(k);
  const GraphParams& hp = h.params();
  res.c = inst.c * hp.t;
  res.s = std::max(inst.s * hp.t, Rational(static_cast<std::int64_t>(out.z)) * hp.s);
  res.collections.assign(1, std::vector<Bitset>(out.origin.size(), Bitset(*universe)));

  auto& sets = res.collections[0];
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(sets.size()); ++idx) {
    const auto [r, i] = out.origin[static_cast<std::size_t>(idx)];
    const Bitset& nb = h.row(h.global_index(r, out.bijections[r][i]));
    const auto bs = nb.indices();
    Bitset& dst = sets[static_cast<std::size_t>(idx)];
    for (auto u : inst.collections[r][i].indices())
      for (auto b : bs) dst.set(u * b_size + b);
  }
  return out;
}

namespace {

/// N_H of a set of left vertices given as a bitset over A.
Bitset neighbourhood_of(const ColouredBipartiteGraph& h, const Bitset& members) {
  Bitset out(h.b_size(), true);
  for (auto v : members.indices()) out &= h.row(v);
  return out;
}

}  // namespace

SetSystemInstance tgc_compose(const SetSystemInstance& inst, const ColouredBipartiteGraph& h) {
  inst.validate();
  if (inst.coloured) throw InvalidArgument("threshold composition needs an uncoloured instance");
  if (inst.universe_size != h.num_left()) {
    throw SizeMismatch("instance universe has " + std::to_string(inst.universe_size) + " elements but the graph has " +
                       std::to_string(h.num_left()) + " left vertices");
  }
  SetSystemInstance out;
  out.universe_size = h.b_size();
  out.coloured = false;
  out.k = inst.k;
  out.c = h.params().t;
  out.s = h.params().s;
  const auto& src = inst.collections[0];
  out.collections.assign(1, std::vector<Bitset>(src.size()));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(src.size()); ++i)
    out.collections[0][static_cast<std::size_t>(i)] = neighbourhood_of(h, src[static_cast<std::size_t>(i)]);
  return out;
}

SetSystemInstance clique_tgc_compose(const SimpleGraph& g0, const ColouredBipartiteGraph& h, unsigned k) {
  if (g0.num_vertices != h.num_left()) {
    throw SizeMismatch("graph has " + std::to_string(g0.num_vertices) + " vertices but H has " +
                       std::to_string(h.num_left()) + " left vertices");
  }
  if (k < 2) throw InvalidArgument("clique size must be at least 2");
  SetSystemInstance out;
  out.universe_size = h.b_size();
  out.coloured = false;
  out.k = static_cast<unsigned>(binomial(k, 2));
  out.c = h.params().t;
  out.s = h.params().s;
  out.collections.assign(1, std::vector<Bitset>(g0.edges.size()));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t e = 0; e < static_cast<std::int64_t>(g0.edges.size()); ++e) {
    const auto [u, v] = g0.edges[static_cast<std::size_t>(e)];
    Bitset nb = h.row(u);
    nb &= h.row(v);
    out.collections[0][static_cast<std::size_t>(e)] = std::move(nb);
  }
  return out;
}

}  // namespace extremal
