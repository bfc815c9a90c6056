#include "extremal/setsys.hpp"

#include <doctest.h>

#include "extremal/combinatorics.hpp"
#include "extremal/errors.hpp"
#include "extremal/reduce.hpp"
#include "support.hpp"

namespace extremal {
namespace {

SetSystemInstance uncoloured(std::size_t universe, std::vector<Bitset> sets) {
  SetSystemInstance inst;
  inst.universe_size = universe;
  inst.k = 2;
  inst.collections.push_back(std::move(sets));
  return inst;
}

SetSystemInstance random_coloured(std::mt19937_64& gen, unsigned k, std::size_t n, std::size_t universe) {
  SetSystemInstance inst;
  inst.universe_size = universe;
  inst.coloured = true;
  inst.k = k;
  for (unsigned r = 0; r < k; ++r) {
    auto& c = inst.collections.emplace_back();
    for (std::size_t i = 0; i < n; ++i) c.push_back(testing::random_set(universe, 0.6, gen));
  }
  return inst;
}

TEST_CASE("max intersection examples") {
  const Bitset same = make_set(6, {1, 2, 4});
  CHECK(solve_max_intersection(uncoloured(6, {same, same, same, same}), 3) == Solution{{0, 1, 2}, 3});
  CHECK(solve_max_intersection(uncoloured(6, {make_set(6, {0}), make_set(6, {1}), make_set(6, {2, 3})}), 2).value ==
        0);
  const auto inst = uncoloured(6, {make_set(6, {0, 1, 2}), make_set(6, {2, 3}), make_set(6, {0, 1, 2, 4}),
                                   make_set(6, {4, 5})});
  CHECK(solve_max_intersection(inst, 2) == Solution{{0, 2}, 3});
}

TEST_CASE("min coverage examples") {
  const Bitset same = make_set(5, {0, 3});
  CHECK(solve_min_coverage(uncoloured(5, {same, same, same}), 2).value == 2);
  CHECK(solve_min_coverage(uncoloured(5, {make_set(5, {0}), make_set(5, {1}), make_set(5, {2}), make_set(5, {3})}), 3)
            .value == 3);
  const auto inst = uncoloured(5, {make_set(5, {0, 1}), make_set(5, {1, 2, 3}), make_set(5, {0, 1, 2}),
                                   make_set(5, {4}), make_set(5, {0, 4})});
  CHECK(solve_min_coverage(inst, 2) == Solution{{3, 4}, 2});
}

TEST_CASE("panchromatic examples") {
  SetSystemInstance inst;
  inst.universe_size = 4;
  inst.coloured = true;
  inst.k = 3;
  for (int r = 0; r < 3; ++r) inst.collections.push_back({Bitset(4, true), make_set(4, {1})});
  CHECK(solve_panchromatic(inst) == Solution{{0, 0, 0}, 4});
  inst.collections[1] = {Bitset(4)};
  CHECK(solve_panchromatic(inst).value == 0);
}

TEST_CASE("panchromatic solver against transversal enumeration") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned k = 2 + trial % 2;
    const SetSystemInstance inst = random_coloured(gen, k, 1 + trial % 4, 8);
    std::uint64_t best = 0;
    std::vector<std::size_t> idx(k, 0);
    std::vector<std::size_t> radix(k, inst.collections[0].size());
    do {
      std::vector<const Bitset*> sets;
      for (unsigned r = 0; r < k; ++r) sets.push_back(&inst.collections[r][idx[r]]);
      best = std::max<std::uint64_t>(best, testing::naive_intersection(sets, 8));
    } while (next_product(idx, radix));
    REQUIRE(solve_panchromatic(inst).value == best);

    // Flattened instance, transversal tuples only.
    const SetSystemInstance flat = flatten(inst, k);
    REQUIRE(flat.collections[0].size() == inst.num_sets());
    std::uint64_t best_flat = 0;
    const std::size_t n = inst.collections[0].size();
    std::vector<std::size_t> comb(k);
    for (unsigned i = 0; i < k; ++i) comb[i] = i;
    if (flat.collections[0].size() >= k) {
      do {
        bool transversal = true;
        for (unsigned i = 0; i < k; ++i) transversal = transversal && comb[i] / n == i;
        if (!transversal) continue;
        std::vector<const Bitset*> sets;
        for (auto c : comb) sets.push_back(&flat.collections[0][c]);
        best_flat = std::max<std::uint64_t>(best_flat, testing::naive_intersection(sets, 8));
      } while (next_combination(comb, flat.collections[0].size()));
    }
    REQUIRE(best_flat == best);
  }
}

TEST_CASE("monochromatic number") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 30; ++trial) {
    const SetSystemInstance inst = random_coloured(gen, 2 + trial % 2, 1 + trial % 3, 7);
    const SetSystemInstance flat = flatten(inst, inst.k);
    CHECK(monochromatic_number(inst, inst.k) == solve_max_intersection(flat, inst.k).value);
  }
  SetSystemInstance disjoint;
  disjoint.universe_size = 4;
  disjoint.coloured = true;
  disjoint.k = 2;
  disjoint.collections = {{make_set(4, {0}), make_set(4, {1})}, {make_set(4, {2}), make_set(4, {3})}};
  CHECK(monochromatic_number(disjoint, 2) == 0);
  for (auto& c : disjoint.collections)
    for (auto& s : c) s.set(3);
  CHECK(monochromatic_number(disjoint, 2) >= 1);
}

MaxCoverInstance crafted_maxcover() {
  // a0 ~ w0, w2; a1 ~ w1; b0 ~ w0, w2; b1 ~ w1, w3.
  MaxCoverInstance m({2, 2}, {2, 2});
  for (auto [v, w] : std::vector<std::pair<int, int>>{{0, 0}, {0, 2}, {1, 1}, {2, 0}, {2, 2}, {3, 1}, {3, 3}})
    m.add_edge(v, w);
  return m;
}

TEST_CASE("maxcover examples") {
  const MaxCoverInstance m = crafted_maxcover();
  CHECK(covered_super_nodes(m, std::vector<std::size_t>{0, 0}) == 2);
  CHECK(covered_super_nodes(m, std::vector<std::size_t>{0, 1}) == 0);
  CHECK(covered_super_nodes(m, std::vector<std::size_t>{1, 0}) == 0);
  CHECK(covered_super_nodes(m, std::vector<std::size_t>{1, 1}) == 1);
  const auto s = solve_maxcover(m);
  CHECK(s.labeling == std::vector<std::size_t>{0, 0});
  CHECK(s.covered == 2);
  CHECK(s.fraction == Rational(1));

  MaxCoverInstance empty({2, 3}, {2, 2, 1});
  CHECK(solve_maxcover(empty).fraction == Rational(0));
  MaxCoverInstance full({2, 3}, {2, 2, 1});
  for (std::size_t v = 0; v < 5; ++v)
    for (std::size_t w = 0; w < 5; ++w) full.add_edge(v, w);
  CHECK(solve_maxcover(full).fraction == Rational(1));
}

TEST_CASE("unique maxcover") {
  MaxCoverInstance singletons({2, 2}, {1, 1, 1});
  std::mt19937_64 gen(3);
  for (std::size_t v = 0; v < 4; ++v)
    for (std::size_t w = 0; w < 3; ++w)
      if (gen() % 2) singletons.add_edge(v, w);
  CHECK(is_unique_maxcover(singletons));

  MaxCoverInstance doubled({1, 1}, {2});
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t w = 0; w < 2; ++w) doubled.add_edge(v, w);
  CHECK_FALSE(is_unique_maxcover(doubled));

  CHECK(is_unique_maxcover(crafted_maxcover()));
  MaxCoverInstance full({2, 3}, {2, 2, 1});
  for (std::size_t v = 0; v < 5; ++v)
    for (std::size_t w = 0; w < 5; ++w) full.add_edge(v, w);
  CHECK_FALSE(is_unique_maxcover(full));
}

TEST_CASE("monochromatic number of a converted maxcover is at most the right side") {
  const SetSystemInstance inst = maxcover_to_panchromatic(crafted_maxcover());
  CHECK(monochromatic_number(inst, 2) <= 2);
}

TEST_CASE("instance text round trip") {
  std::mt19937_64 gen(4);
  SetSystemInstance inst = random_coloured(gen, 3, 2, 9);
  inst.c = Rational(5, 2);
  inst.s = Rational(1);
  inst.collections[1][0] = Bitset(9);
  CHECK(parse_instance(format_instance(inst)) == inst);

  const MaxCoverInstance m = crafted_maxcover();
  CHECK(parse_maxcover(format_maxcover(m)) == m);

  SimpleGraph g{5, {{0, 1}, {1, 4}, {2, 3}}};
  CHECK(parse_simple_graph(format_simple_graph(g)) == g);
  CHECK(parse_simple_graph("graph 3\n# comment\nedge 2 0\nedge 0 2\nedge 1 0\n") == SimpleGraph{3, {{0, 1}, {0, 2}}});
}

TEST_CASE("text parse errors carry line numbers") {
  try {
    parse_instance("setsystem\nuniverse 4\ncoloured 0\nk 2\nc 1\ns 0\ncollection\nset 1 9\n");
    FAIL("expected MalformedInput");
  } catch (const MalformedInput& e) {
    CHECK(e.offset() == 8);
  }
  CHECK_THROWS_AS(parse_instance("nonsense\n"), MalformedInput);
  CHECK_THROWS_AS(parse_maxcover("maxcover\nleft 1\nright 1\nedge 0 5\n"), MalformedInput);
  CHECK_THROWS_AS(parse_simple_graph("graph 2\nedge 1 1\n"), MalformedInput);
}

TEST_CASE("validation") {
  SetSystemInstance bad = uncoloured(4, {Bitset(4), Bitset(5)});
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(solve_max_intersection(uncoloured(4, {Bitset(4)}), 2), InvalidArgument);
}

}  // namespace
}  // namespace extremal
