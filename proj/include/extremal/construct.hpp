#pragma once

#include <cstdint>
#include <vector>

#include "extremal/bigraph.hpp"
#include "extremal/rng.hpp"
#include "extremal/verify.hpp"

namespace extremal {

/// d = (k+1)^2 + 1, t = q/2, s = d^{k+1}; polynomials in k+1 variables.
GraphParams threshold_params(unsigned k, std::uint64_t q);

/// d = k^2 + 2, D = lambda d, t = D^k, s = D^k / lambda, p = 1/(4 (D^k)!).
GraphParams panchromatic_params(unsigned k, unsigned lambda, std::uint64_t q);

/// One uncoloured class of q^{k+1} uniform polynomials of degree <= d in
/// k+1 variables over B = F_q^{k+1}. Draws n * C(k+1+d, k+1) field
/// elements from rng, vertex by vertex in basis order.
ColouredBipartiteGraph sample_threshold(unsigned k, std::uint64_t q, Rng& rng, std::uint64_t budget = kDefaultBudget);

/// k classes of q^k vertices over B = F_q^k. Draws the class shifts w_1..w_k
/// (degree <= D) first, then one offset p (degree <= d) per vertex in
/// global vertex order; vertex polynomial is w_i + p.
ColouredBipartiteGraph sample_panchromatic(unsigned k, unsigned lambda, std::uint64_t q, Rng& rng,
                                           std::uint64_t budget = kDefaultBudget);

struct BatchRequest {
  GraphKind kind = GraphKind::threshold;
  unsigned k = 1;
  unsigned lambda = 2;  // panchromatic only
  std::uint64_t q = 2;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t budget = kDefaultBudget;  // generation budget
  VerifyOptions verify;                   // seed is replaced per trial
  /// Count the exactly-t fraction clause when deciding whether a
  /// panchromatic trial passes.
  bool require_fraction = false;
};

struct TrialSummary {
  std::uint64_t index = 0;
  bool passed = false;
  std::uint64_t sound_violations = 0;
  std::uint64_t complete_violations = 0;
  bool fraction_passed = true;
};

struct BatchResult {
  ColouredBipartiteGraph graph;
  VerificationReport report;
  std::uint64_t trial_index = 0;
  std::uint64_t passing_trials = 0;
  std::vector<TrialSummary> trials;
};

/// Trial i samples from derive_seed(master, "batch.sample", i) and verifies
/// Monte Carlo clauses from derive_seed(master, "batch.verify", i). Returns
/// the first passing trial, else the lowest-index trial minimizing
/// (soundness violations, completeness violations). Trials run in
/// parallel; the result does not depend on the thread count.
BatchResult batch_sample_and_select(const BatchRequest& request);

}  // namespace extremal
