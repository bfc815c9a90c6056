#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <utility>
#include <vector>

#include "extremal/bigraph.hpp"
#include "extremal/setsys.hpp"

namespace extremal::testing {

inline std::filesystem::path data_dir() { return EXTREMAL_TEST_DATA; }

/// A1 = {a1, a2}, A2 = {b1, b2}, B = {x, y, z}; a1, b1 ~ {x, y}; a2, b2 ~ {x, z}.
inline ColouredBipartiteGraph hand_panchromatic() {
  const std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 0}, {0, 1}, {1, 0}, {1, 2},
                                                               {2, 0}, {2, 1}, {3, 0}, {3, 2}};
  ColouredBipartiteGraph g = from_edges({2, 2}, 3, edges);
  GraphParams p;
  p.kind = GraphKind::panchromatic;
  p.k = 2;
  p.t = Rational(2);
  p.s = Rational(1);
  p.p = ProbabilityTarget::exact(Rational(1, 2));
  g.set_params(p);
  return g;
}

/// Each left vertex is adjacent to each right vertex with probability density.
inline ColouredBipartiteGraph random_graph(std::vector<std::size_t> class_sizes, std::size_t b_size,
                                           double density, std::mt19937_64& gen) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t n = 0;
  for (auto s : class_sizes) n += s;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t b = 0; b < b_size; ++b)
      if (coin(gen)) edges.emplace_back(v, b);
  return from_edges(std::move(class_sizes), b_size, edges);
}

inline Bitset random_set(std::size_t universe, double density, std::mt19937_64& gen) {
  std::bernoulli_distribution coin(density);
  Bitset s(universe);
  for (std::size_t e = 0; e < universe; ++e)
    if (coin(gen)) s.set(e);
  return s;
}

/// Size of the intersection computed element by element.
inline std::size_t naive_intersection(const std::vector<const Bitset*>& sets, std::size_t universe) {
  std::size_t c = 0;
  for (std::size_t e = 0; e < universe; ++e) {
    bool all = true;
    for (const Bitset* s : sets) all = all && s->test(e);
    c += all ? 1 : 0;
  }
  return c;
}

/// |N(S)| computed from adjacency queries.
inline std::size_t naive_common(const ColouredBipartiteGraph& g, const std::vector<std::size_t>& vs) {
  std::size_t c = 0;
  for (std::size_t b = 0; b < g.b_size(); ++b) {
    bool all = true;
    for (auto v : vs) all = all && g.adjacent(v, b);
    c += all ? 1 : 0;
  }
  return c;
}

}  // namespace extremal::testing
