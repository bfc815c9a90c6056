#include <doctest.h>
#include <omp.h>

#include "extremal/combinatorics.hpp"
#include "extremal/construct.hpp"
#include "extremal/serial.hpp"
#include "extremal/setsys.hpp"
#include "extremal/verify.hpp"
#include "support.hpp"

namespace extremal {
namespace {

class Threads {
 public:
  explicit Threads(int n) : saved_(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

void check_same(const VerificationReport& a, const VerificationReport& b) {
  CHECK(a.complete_checked == b.complete_checked);
  CHECK(a.sound_checked == b.sound_checked);
  CHECK(a.complete_population == b.complete_population);
  CHECK(a.sound_population == b.sound_population);
  CHECK(a.min_complete == b.min_complete);
  CHECK(a.max_complete == b.max_complete);
  CHECK(a.max_sound == b.max_sound);
  CHECK(a.complete_violations == b.complete_violations);
  CHECK(a.sound_violations == b.sound_violations);
  CHECK(a.exact_t_count == b.exact_t_count);
  CHECK(a.witnesses == b.witnesses);
}

TEST_CASE("threshold verifier matches the serial reference") {
  std::mt19937_64 gen(1);
  for (int threads : {1, 2, 5}) {
    Threads scope(threads);
    for (unsigned k = 1; k <= 3; ++k) {
      ColouredBipartiteGraph g = testing::random_graph({14}, 40, 0.5, gen);
      GraphParams p;
      p.kind = GraphKind::threshold;
      p.k = k;
      p.t = Rational(40 >> k) + Rational(1);
      p.s = Rational(40 >> (k + 1));
      g.set_params(p);
      VerifyOptions o;
      o.mode = VerifyMode::exhaustive;
      o.max_witnesses = 5;
      check_same(verify_threshold(g, o), serial::verify_threshold(g, k, 5));
    }
  }
}

TEST_CASE("panchromatic verifier matches the serial reference") {
  std::mt19937_64 gen(2);
  for (int threads : {1, 3}) {
    Threads scope(threads);
    for (const auto& sizes : {std::vector<std::size_t>{4, 5}, std::vector<std::size_t>{3, 1, 4},
                              std::vector<std::size_t>{2, 3, 2, 3}}) {
      ColouredBipartiteGraph g = testing::random_graph(sizes, 30, 0.6, gen);
      GraphParams p;
      p.kind = GraphKind::panchromatic;
      p.k = static_cast<unsigned>(sizes.size());
      p.t = Rational(30 >> sizes.size());
      p.s = Rational(30 >> (sizes.size() + 1));
      p.p = ProbabilityTarget::exact(Rational(1, 4));
      g.set_params(p);
      VerifyOptions o;
      o.mode = VerifyMode::exhaustive;
      o.max_witnesses = 6;
      check_same(verify_panchromatic(g, o), serial::verify_panchromatic(g, 6));
    }
  }
}

TEST_CASE("solvers match the serial reference") {
  std::mt19937_64 gen(3);
  for (int threads : {1, 4}) {
    Threads scope(threads);
    for (int trial = 0; trial < 15; ++trial) {
      SetSystemInstance flat;
      flat.universe_size = 10;
      flat.k = 3;
      flat.collections.emplace_back();
      for (int i = 0; i < 9; ++i) flat.collections[0].push_back(testing::random_set(10, 0.5, gen));
      CHECK(solve_max_intersection(flat, 3) == serial::solve_max_intersection(flat, 3));
      CHECK(solve_min_coverage(flat, 3) == serial::solve_min_coverage(flat, 3));

      SetSystemInstance col;
      col.universe_size = 10;
      col.coloured = true;
      col.k = 3;
      for (int r = 0; r < 3; ++r) {
        auto& c = col.collections.emplace_back();
        for (int i = 0; i < 4; ++i) c.push_back(testing::random_set(10, 0.6, gen));
      }
      CHECK(solve_panchromatic(col) == serial::solve_panchromatic(col));

      MaxCoverInstance m({3, 2, 3}, {2, 2, 2});
      for (std::size_t v = 0; v < 8; ++v)
        for (std::size_t w = 0; w < 6; ++w)
          if (gen() % 3 == 0) m.add_edge(v, w);
      const auto fast = solve_maxcover(m);
      const auto slow = serial::solve_maxcover(m);
      CHECK(fast.labeling == slow.labeling);
      CHECK(fast.covered == slow.covered);
    }
  }
}

TEST_CASE("statistics match the serial reference") {
  Threads scope(3);
  const std::vector<unsigned> lin{1, 1};
  const ZHistogram a = bezout_exact(2, lin, 3);
  const ZHistogram b = serial::bezout_exact(2, lin, 3);
  CHECK(a.counts == b.counts);
  CHECK(a.trials == b.trials);
  const std::vector<unsigned> mixed{2, 1};
  CHECK(bezout_exact(2, mixed, 2).counts == serial::bezout_exact(2, mixed, 2).counts);

  const FieldSpec f(5);
  const std::vector<Point> pts{{f.element(0), f.element(1)}, {f.element(2), f.element(2)},
                               {f.element(4), f.element(0)}};
  const auto v1 = vanish_probability_exact(2, 2, 5, pts);
  const auto v2 = serial::vanish_probability_exact(2, 2, 5, pts);
  CHECK(v1.probability == v2.probability);
  CHECK(v1.vanishing == v2.vanishing);
}

TEST_CASE("Monte Carlo results do not depend on thread count") {
  const std::vector<unsigned> lin{1, 1};
  std::string one, many;
  {
    Threads scope(1);
    one = bezout_trials(2, lin, 31, 5000, 77).to_text();
  }
  {
    Threads scope(6);
    many = bezout_trials(2, lin, 31, 5000, 77).to_text();
  }
  CHECK(one == many);

  Rng rng(5);
  const ColouredBipartiteGraph g = sample_threshold(1, 7, rng);
  VerifyOptions o;
  o.mode = VerifyMode::montecarlo;
  o.samples = 4000;
  o.seed = 3;
  std::string r1, r2;
  {
    Threads scope(1);
    r1 = verify_threshold(g, o).to_text();
  }
  {
    Threads scope(7);
    r2 = verify_threshold(g, o).to_text();
  }
  CHECK(r1 == r2);
}

}  // namespace
}  // namespace extremal
