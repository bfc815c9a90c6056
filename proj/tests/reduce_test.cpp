#include "extremal/reduce.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

#include "extremal/combinatorics.hpp"
#include "extremal/errors.hpp"
#include "extremal/verify.hpp"
#include "support.hpp"

namespace extremal {
namespace {

SetSystemInstance coloured(std::mt19937_64& gen, unsigned k, std::size_t n, std::size_t universe) {
  SetSystemInstance inst;
  inst.universe_size = universe;
  inst.coloured = true;
  inst.k = k;
  inst.c = Rational(2);
  inst.s = Rational(1);
  for (unsigned r = 0; r < k; ++r) {
    auto& c = inst.collections.emplace_back();
    for (std::size_t i = 0; i < n; ++i) c.push_back(testing::random_set(universe, 0.6, gen));
  }
  return inst;
}

// Checks |∩ ζ_r(S_r)| = |∩ S_r| * |N_H(images)| on every panchromatic tuple.
void check_product_law(const SetSystemInstance& inst, const ColouredBipartiteGraph& h, const PgcResult& res) {
  const unsigned k = inst.k;
  std::vector<std::size_t> offset(k, 0), radix;
  for (unsigned r = 0; r < k; ++r) {
    radix.push_back(inst.collections[r].size());
    if (r) offset[r] = offset[r - 1] + inst.collections[r - 1].size();
  }
  const auto& out = res.instance.collections[0];
  std::vector<std::size_t> idx(k, 0);
  do {
    std::vector<const Bitset*> composed, original;
    std::vector<std::size_t> images;
    for (unsigned r = 0; r < k; ++r) {
      composed.push_back(&out[offset[r] + idx[r]]);
      original.push_back(&inst.collections[r][idx[r]]);
      images.push_back(h.global_index(r, res.bijections[r][idx[r]]));
    }
    REQUIRE(testing::naive_intersection(composed, res.instance.universe_size) ==
            testing::naive_intersection(original, inst.universe_size) * testing::naive_common(h, images));
  } while (next_product(idx, radix));
}

TEST_CASE("maxcover conversion examples") {
  MaxCoverInstance empty({2, 2}, {1, 2});
  const SetSystemInstance e = maxcover_to_panchromatic(empty);
  CHECK(e.coloured);
  CHECK(e.k == 2);
  CHECK(e.universe_size == 3);
  for (const auto& c : e.collections)
    for (const auto& s : c) CHECK(s.none());

  MaxCoverInstance full({2, 3}, {1, 2});
  for (std::size_t v = 0; v < 5; ++v)
    for (std::size_t w = 0; w < 3; ++w) full.add_edge(v, w);
  const SetSystemInstance f = maxcover_to_panchromatic(full, Rational(1), Rational(1, 2));
  CHECK(solve_panchromatic(f).value == 3);
  CHECK(f.c == Rational(2));
  CHECK(f.s == Rational(1));
}

TEST_CASE("conversion preserves coverage on unique fixtures") {
  for (const char* name : {"unique_maxcover_a.txt", "unique_maxcover_b.txt", "unique_maxcover_c.txt"}) {
    CAPTURE(name);
    const MaxCoverInstance m = parse_maxcover(read_text_file(testing::data_dir() / name));
    REQUIRE(is_unique_maxcover(m));
    const SetSystemInstance inst = maxcover_to_panchromatic(m);
    const std::size_t ell = m.right_sizes.size();
    CHECK(inst.c == m.c * Rational(static_cast<std::int64_t>(ell)));
    std::vector<std::size_t> idx(m.left_sizes.size(), 0);
    do {
      std::vector<const Bitset*> sets;
      for (std::size_t r = 0; r < idx.size(); ++r) sets.push_back(&inst.collections[r][idx[r]]);
      REQUIRE(testing::naive_intersection(sets, inst.universe_size) == covered_super_nodes(m, idx));
    } while (next_product(idx, m.left_sizes));
    const auto mc = solve_maxcover(m);
    CHECK(Rational(static_cast<std::int64_t>(solve_panchromatic(inst).value)) ==
          mc.fraction * Rational(static_cast<std::int64_t>(ell)));
  }
}

TEST_CASE("PGC on the hand fixture") {
  const ColouredBipartiteGraph h = testing::hand_panchromatic();
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    const SetSystemInstance inst = coloured(gen, 2, 2, 5);
    Rng rng(trial);
    const auto mode = trial % 2 ? BijectionMode::random : BijectionMode::canonical;
    const PgcResult res = pgc_compose(inst, h, mode, rng);
    CHECK(res.instance.universe_size == 5 * 3);
    CHECK(res.instance.num_sets() == 4);
    CHECK_FALSE(res.instance.coloured);
    CHECK(res.instance.k == 2);
    CHECK(res.z == monochromatic_number(inst, 2));
    CHECK(res.instance.c == Rational(4));
    CHECK(res.instance.s == std::max(Rational(2), Rational(static_cast<std::int64_t>(res.z))));
    check_product_law(inst, h, res);
  }
}

TEST_CASE("PGC with a one-point right side is a relabelling") {
  std::mt19937_64 gen(7);
  const SetSystemInstance inst = coloured(gen, 3, 3, 6);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 0; v < 9; ++v) edges.emplace_back(v, 0);
  ColouredBipartiteGraph h = from_edges({3, 3, 3}, 1, edges);
  GraphParams p;
  p.kind = GraphKind::panchromatic;
  p.t = Rational(1);
  p.s = Rational(1);
  h.set_params(p);
  Rng rng(0);
  const PgcResult res = pgc_compose(inst, h, BijectionMode::canonical, rng, 0);
  CHECK(res.instance.universe_size == 6);
  CHECK(res.instance.collections[0] == flatten(inst, 3).collections[0]);
  CHECK(res.z == 0);
}

TEST_CASE("random bijections are uniform and independent") {
  std::mt19937_64 gen(8);
  const SetSystemInstance inst = coloured(gen, 2, 2, 3);
  const ColouredBipartiteGraph h = testing::hand_panchromatic();
  std::map<std::pair<std::size_t, std::size_t>, int> joint;
  const int runs = 8000;
  for (int i = 0; i < runs; ++i) {
    Rng rng(derive_seed(1, "bijection", i));
    const PgcResult res = pgc_compose(inst, h, BijectionMode::random, rng, 0);
    ++joint[{res.bijections[0][0], res.bijections[1][0]}];
  }
  REQUIRE(joint.size() == 4);
  const double sigma = std::sqrt(runs * 0.25 * 0.75);
  for (const auto& [key, c] : joint) CHECK(std::abs(c - runs / 4.0) < 4 * sigma);
  Rng a(3), b(3);
  CHECK(pgc_compose(inst, h, BijectionMode::random, a).instance ==
        pgc_compose(inst, h, BijectionMode::random, b).instance);
}

TEST_CASE("PGC shape errors") {
  std::mt19937_64 gen(9);
  Rng rng(0);
  const ColouredBipartiteGraph h = testing::hand_panchromatic();
  CHECK_THROWS_AS(pgc_compose(coloured(gen, 2, 3, 4), h, BijectionMode::canonical, rng), SizeMismatch);
  CHECK_THROWS_AS(pgc_compose(coloured(gen, 3, 2, 4), h, BijectionMode::canonical, rng), SizeMismatch);
}

// Explicit threshold graph whose thresholds are read off its own statistics.
ColouredBipartiteGraph tight_threshold(std::mt19937_64& gen, std::size_t n, std::size_t b, unsigned k) {
  ColouredBipartiteGraph h = testing::random_graph({n}, b, 0.75, gen);
  GraphParams p;
  p.kind = GraphKind::threshold;
  p.k = k;
  p.t = Rational(1, 2);
  p.s = Rational(static_cast<std::int64_t>(b));
  h.set_params(p);
  VerifyOptions o;
  o.mode = VerifyMode::exhaustive;
  const auto r = verify_threshold(h, o);
  p.t = Rational(static_cast<std::int64_t>(r.min_complete));
  p.s = Rational(static_cast<std::int64_t>(r.max_sound));
  h.set_params(p);
  return h;
}

TEST_CASE("TGC neighbourhood law") {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + trial % 3;
    const ColouredBipartiteGraph h = tight_threshold(gen, n, 10, 2);
    SetSystemInstance inst;
    inst.universe_size = n;
    inst.k = 2;
    inst.c = Rational(2);
    inst.s = Rational(4);
    inst.collections.emplace_back();
    for (int i = 0; i < 5; ++i) inst.collections[0].push_back(testing::random_set(n, 0.3, gen));
    inst.collections[0].push_back(Bitset(n));
    const SetSystemInstance out = tgc_compose(inst, h);
    CHECK(out.universe_size == h.b_size());
    CHECK(out.k == 2);
    CHECK(out.c == h.params().t);
    CHECK(out.s == h.params().s);
    CHECK(out.collections[0].back().count() == h.b_size());

    const auto& sets = inst.collections[0];
    std::vector<std::size_t> idx{0, 1};
    do {
      Bitset un(n);
      un |= sets[idx[0]];
      un |= sets[idx[1]];
      const std::vector<const Bitset*> pair{&out.collections[0][idx[0]], &out.collections[0][idx[1]]};
      REQUIRE(testing::naive_intersection(pair, h.b_size()) == testing::naive_common(h, un.indices()));
    } while (next_combination(idx, sets.size()));

    if (solve_min_coverage(inst, 2).value <= 2) CHECK(at_least(solve_max_intersection(out, 2).value, h.params().t));
  }
  SetSystemInstance wrong;
  wrong.universe_size = 3;
  wrong.k = 2;
  wrong.collections = {{Bitset(3), Bitset(3)}};
  std::mt19937_64 g2(1);
  CHECK_THROWS_AS(tgc_compose(wrong, tight_threshold(g2, 4, 5, 2)), SizeMismatch);
}

TEST_CASE("clique composition") {
  std::mt19937_64 gen(11);
  const ColouredBipartiteGraph h = tight_threshold(gen, 4, 12, 3);

  const SimpleGraph triangle{4, {{0, 1}, {0, 2}, {1, 2}}};
  const SetSystemInstance t = clique_tgc_compose(triangle, h, 3);
  CHECK(t.k == 3);
  REQUIRE(t.num_sets() == 3);
  const std::vector<const Bitset*> all{&t.collections[0][0], &t.collections[0][1], &t.collections[0][2]};
  CHECK(testing::naive_intersection(all, h.b_size()) == testing::naive_common(h, {0, 1, 2}));
  CHECK(t.collections[0][1].count() == testing::naive_common(h, {0, 2}));

  CHECK(clique_tgc_compose(SimpleGraph{4, {}}, h, 3).num_sets() == 0);

  // K4 minus the edge {2, 3}: triangles {0, 1, 2} and {0, 1, 3} survive.
  const SimpleGraph almost{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}};
  const SetSystemInstance k4 = clique_tgc_compose(almost, h, 3);
  CHECK(k4.num_sets() == 5);
  CHECK(at_least(solve_max_intersection(k4, 3).value, h.params().t));
  CHECK_THROWS_AS(clique_tgc_compose(SimpleGraph{5, {}}, h, 3), SizeMismatch);
}

}  // namespace
}  // namespace extremal
