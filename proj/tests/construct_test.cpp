#include "extremal/construct.hpp"

#include <doctest.h>
#include <omp.h>

#include <map>

#include "extremal/combinatorics.hpp"
#include "extremal/errors.hpp"

namespace extremal {
namespace {

TEST_CASE("threshold recipe") {
  const GraphParams a = threshold_params(1, 11);
  CHECK(a.kind == GraphKind::threshold);
  CHECK(a.d == 5);
  CHECK(a.t == Rational(11, 2));
  CHECK(a.s == Rational(25));
  CHECK_FALSE(a.soundness_vacuous);

  const GraphParams b = threshold_params(2, 5);
  CHECK(b.d == 10);
  CHECK(b.t == Rational(5, 2));
  CHECK(b.s == Rational(1000));
  CHECK(b.soundness_vacuous);

  CHECK_THROWS_AS(threshold_params(1, 6), NotAPrimePower);
  CHECK_THROWS_AS(threshold_params(0, 5), InvalidArgument);
}

TEST_CASE("panchromatic recipe") {
  const GraphParams p = panchromatic_params(2, 2, 7);
  CHECK(p.kind == GraphKind::panchromatic);
  CHECK(p.d == 6);
  CHECK(p.D == 12);
  CHECK(p.lambda == 2);
  CHECK(p.t == Rational(144));
  CHECK(p.s == Rational(72));
  CHECK(p.p.str() == "1/(4*144!)");
  CHECK(p.soundness_vacuous);  // |B| = 49 <= 72

  const GraphParams r = panchromatic_params(3, 3, 5);
  CHECK(r.d == 11);
  CHECK(r.D == 33);
  CHECK(r.t == Rational(33 * 33 * 33));
  CHECK(r.s == Rational(33 * 33 * 11));
  CHECK_THROWS_AS(panchromatic_params(2, 1, 7), InvalidArgument);
}

TEST_CASE("threshold sampling") {
  Rng rng(21);
  const ColouredBipartiteGraph g = sample_threshold(1, 11, rng);
  CHECK(g.num_left() == 121);
  CHECK(g.b_size() == 121);
  CHECK(g.num_classes() == 1);
  CHECK(g.params() == threshold_params(1, 11));
  CHECK(rng.field_draws() == 121 * binomial(2 + 5, 2));
  const FieldSpec f(11);
  const auto& polys = g.labels()->vertex_polys;
  for (std::size_t v = 0; v < g.num_left(); ++v) {
    REQUIRE(polys[v].degree_bound() == 5);
    REQUIRE(g.degree(v) == zero_set_bits(std::span(&polys[v], 1), f).count());
  }
  Rng again(21);
  CHECK(sample_threshold(1, 11, again) == g);
}

TEST_CASE("panchromatic sampling structure") {
  Rng rng(5);
  const FieldSpec f(7);
  const ColouredBipartiteGraph g = sample_panchromatic(2, 2, 7, rng);
  CHECK(g.num_classes() == 2);
  CHECK(g.class_size(0) == 49);
  CHECK(g.b_size() == 49);
  CHECK(rng.field_draws() == 2 * binomial(2 + 12, 2) + 98 * binomial(2 + 6, 2));
  const GraphLabels& l = *g.labels();
  REQUIRE(l.class_shifts.size() == 2);
  REQUIRE(l.vertex_offsets.size() == 98);
  const std::size_t low = binomial(2 + 6, 2);
  for (std::size_t v = 0; v < g.num_left(); ++v) {
    const std::size_t c = g.class_of(v);
    REQUIRE(l.vertex_polys[v] == add_mpoly(f, l.class_shifts[c], l.vertex_offsets[v]));
    // Same-class differences have degree <= d.
    const std::size_t u = g.class_offset(c);
    const MPoly diff = sub_mpoly(f, l.vertex_polys[v], l.vertex_polys[u]);
    for (std::size_t i = low; i < diff.coeffs().size(); ++i) REQUIRE(diff.coeffs()[i].value == 0);
  }
}

TEST_CASE("shift plus offset is uniform") {
  // w of degree <= 2 plus p of degree <= 1 over F_2: 8 outcomes.
  const FieldSpec f(2);
  const auto big = MonomialBasis::make(1, 2);
  const auto small = MonomialBasis::make(1, 1);
  Rng rng(31);
  const int draws = 80'000;
  std::map<std::uint32_t, int> bins;
  for (int i = 0; i < draws; ++i) {
    const MPoly s = add_mpoly(f, sample_mpoly(big, f, rng), sample_mpoly(small, f, rng));
    std::uint32_t code = 0;
    for (auto c : s.coeffs()) code = code * 2 + c.value;
    ++bins[code];
  }
  REQUIRE(bins.size() == 8);
  double chi2 = 0;
  for (const auto& [code, c] : bins) chi2 += (c - draws / 8.0) * (c - draws / 8.0) / (draws / 8.0);
  CHECK(chi2 < 24.32);  // 7 degrees of freedom, 0.999 quantile
}

BatchRequest small_request() {
  BatchRequest req;
  req.kind = GraphKind::panchromatic;
  req.k = 2;
  req.lambda = 2;
  req.q = 5;
  req.trials = 4;
  req.master_seed = 42;
  req.verify.mode = VerifyMode::montecarlo;
  req.verify.samples = 500;
  return req;
}

TEST_CASE("single trial batch is one sample") {
  BatchRequest req = small_request();
  req.trials = 1;
  const BatchResult res = batch_sample_and_select(req);
  Rng rng(derive_seed(42, "batch.sample", 0));
  CHECK(res.graph == sample_panchromatic(2, 2, 5, rng));
  CHECK(res.trial_index == 0);
  CHECK(res.trials.size() == 1);
}

TEST_CASE("batch selection does not depend on thread count") {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const BatchResult one = batch_sample_and_select(small_request());
  omp_set_num_threads(4);
  const BatchResult four = batch_sample_and_select(small_request());
  omp_set_num_threads(saved);
  CHECK(one.trial_index == four.trial_index);
  CHECK(one.passing_trials == four.passing_trials);
  CHECK(one.graph == four.graph);
  CHECK(one.report.to_text() == four.report.to_text());
}

TEST_CASE("threshold batch at q = 31 finds a passing trial") {
  BatchRequest req;
  req.kind = GraphKind::threshold;
  req.k = 1;
  req.q = 31;
  req.trials = 10;
  req.master_seed = 1;
  req.verify.mode = VerifyMode::exhaustive;
  const BatchResult res = batch_sample_and_select(req);
  CHECK(res.passing_trials >= 1);
  CHECK(res.report.passed());
  CHECK(res.trials[res.trial_index].passed);
  for (std::size_t i = 0; i < res.trial_index; ++i) CHECK_FALSE(res.trials[i].passed);
}

}  // namespace
}  // namespace extremal
