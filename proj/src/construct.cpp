#include "extremal/construct.hpp"

#include <algorithm>
#include <limits>
#include <exception>

#include "extremal/combinatorics.hpp"

namespace extremal {

namespace {

std::int64_t to_i64(std::uint64_t v, const char* what) {
  if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw Overflow(std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

void check_q(std::uint64_t q) {
  if (!is_prime_power(q)) throw NotAPrimePower(q);
}

}  // namespace

GraphParams threshold_params(unsigned k, std::uint64_t q) {
  if (k == 0) throw InvalidArgument("k must be positive");
  check_q(q);
  GraphParams p;
  p.kind = GraphKind::threshold;
  p.q = q;
  p.k = k;
  p.d = (k + 1) * (k + 1) + 1;
  p.t = Rational(to_i64(q, "q"), 2);
  p.s = Rational(to_i64(ipow(p.d, k + 1), "soundness bound"));
  p.p = ProbabilityTarget::exact(Rational(1));
  if (auto b = checked_pow(q, k + 1)) p.soundness_vacuous = at_most(*b, p.s);
  return p;
}

GraphParams panchromatic_params(unsigned k, unsigned lambda, std::uint64_t q) {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (lambda < 2) throw InvalidArgument("lambda must be an integer > 1");
  check_q(q);
  GraphParams p;
  p.kind = GraphKind::panchromatic;
  p.q = q;
  p.k = k;
  p.d = k * k + 2;
  p.lambda = lambda;
  p.D = lambda * p.d;
  const std::uint64_t t = ipow(p.D, k);
  p.t = Rational(to_i64(t, "completeness target"));
  p.s = Rational(to_i64(t, "completeness target"), lambda);
  p.p = ProbabilityTarget::inverse_factorial(4, t);
  if (auto b = checked_pow(q, k)) p.soundness_vacuous = at_most(*b, p.s);
  return p;
}

ColouredBipartiteGraph sample_threshold(unsigned k, std::uint64_t q, Rng& rng, std::uint64_t budget) {
  GraphParams params = threshold_params(k, q);
  const FieldSpec field(q);
  const unsigned vars = k + 1;
  const std::uint64_t n = point_count(field, vars, budget);
  const auto basis = MonomialBasis::make(vars, params.d);

  std::vector<std::vector<MPoly>> classes(1);
  classes[0].reserve(n);
  for (std::uint64_t v = 0; v < n; ++v) classes[0].push_back(sample_mpoly(basis, field, rng));

  ColouredBipartiteGraph g = from_polynomials(classes, field, vars, budget);
  g.set_params(std::move(params));
  return g;
}

ColouredBipartiteGraph sample_panchromatic(unsigned k, unsigned lambda, std::uint64_t q, Rng& rng,
                                           std::uint64_t budget) {
  GraphParams params = panchromatic_params(k, lambda, q);
  const FieldSpec field(q);
  const std::uint64_t n = point_count(field, k, budget);
  const auto shift_basis = MonomialBasis::make(k, params.D);
  const auto offset_basis = MonomialBasis::make(k, params.d);

  std::vector<MPoly> shifts;
  for (unsigned i = 0; i < k; ++i) shifts.push_back(sample_mpoly(shift_basis, field, rng));

  std::vector<std::vector<MPoly>> classes(k);
  std::vector<MPoly> offsets;
  offsets.reserve(static_cast<std::size_t>(k) * n);
  for (unsigned i = 0; i < k; ++i) {
    classes[i].reserve(n);
    for (std::uint64_t v = 0; v < n; ++v) {
      offsets.push_back(sample_mpoly(offset_basis, field, rng));
      classes[i].push_back(add_mpoly(field, shifts[i], offsets.back()));
    }
  }

  ColouredBipartiteGraph g = from_polynomials(classes, field, k, budget);
  GraphLabels labels = *g.labels();
  labels.class_shifts = std::move(shifts);
  labels.vertex_offsets = std::move(offsets);
  g.set_labels(std::move(labels));
  g.set_params(std::move(params));
  return g;
}

namespace {

ColouredBipartiteGraph sample_trial(const BatchRequest& req, std::uint64_t index) {
  Rng rng(derive_seed(req.master_seed, "batch.sample", index));
  if (req.kind == GraphKind::panchromatic) return sample_panchromatic(req.k, req.lambda, req.q, rng, req.budget);
  if (req.kind == GraphKind::threshold) return sample_threshold(req.k, req.q, rng, req.budget);
  throw InvalidArgument("batch needs kind threshold or panchromatic");
}

VerificationReport verify_trial(const BatchRequest& req, const ColouredBipartiteGraph& g, std::uint64_t index) {
  VerifyOptions opts = req.verify;
  opts.seed = derive_seed(req.master_seed, "batch.verify", index);
  return req.kind == GraphKind::panchromatic ? verify_panchromatic(g, opts) : verify_threshold(g, opts);
}

TrialSummary summarize(const BatchRequest& req, const VerificationReport& r, std::uint64_t index) {
  TrialSummary s;
  s.index = index;
  s.sound_violations = r.sound_violations;
  s.complete_violations = r.complete_violations;
  s.fraction_passed = r.fraction_passed();
  s.passed = r.passed(req.require_fraction && req.kind == GraphKind::panchromatic);
  return s;
}

}  // namespace

BatchResult batch_sample_and_select(const BatchRequest& request) {
  if (request.trials == 0) throw InvalidArgument("batch needs at least one trial");
  BatchResult out;
  out.trials.resize(request.trials);

  // Graphs are not kept; the selected trial is regenerated from its substream.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(request.trials); ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    try {
      const auto g = sample_trial(request, index);
      out.trials[index] = summarize(request, verify_trial(request, g, index), index);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::uint64_t best = 0;
  bool found_pass = false;
  for (const auto& t : out.trials) {
    if (t.passed) {
      ++out.passing_trials;
      if (!found_pass) {
        best = t.index;
        found_pass = true;
      }
    }
  }
  if (!found_pass) {
    const bool fraction = request.require_fraction && request.kind == GraphKind::panchromatic;
    auto key = [fraction](const TrialSummary& t) {
      return std::pair(t.sound_violations, t.complete_violations + (fraction && !t.fraction_passed ? 1 : 0));
    };
    for (const auto& t : out.trials)
      if (key(t) < key(out.trials[best])) best = t.index;
  }

  out.trial_index = best;
  out.graph = sample_trial(request, best);
  out.report = verify_trial(request, out.graph, best);
  return out;
}

}  // namespace extremal
