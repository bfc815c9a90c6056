#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "extremal/bigraph.hpp"
#include "extremal/combinatorics.hpp"
#include "extremal/errors.hpp"
#include "extremal/field.hpp"
#include "extremal/mpoly.hpp"
#include "extremal/rational.hpp"

namespace extremal {

enum class VerifyMode : std::uint8_t { automatic, exhaustive, montecarlo };

const char* to_string(VerifyMode mode);
VerifyMode parse_verify_mode(const std::string& text);

struct VerifyOptions {
  VerifyMode mode = VerifyMode::automatic;
  /// Cap on enumerated tuples in exhaustive mode. Automatic mode falls back
  /// to Monte Carlo above it.
  std::uint64_t budget = kDefaultBudget;
  /// Monte Carlo samples per clause.
  std::uint64_t samples = 10'000;
  /// Master seed for Monte Carlo substreams; unused when exhaustive.
  std::uint64_t seed = 0;
  /// Violating tuples kept per clause (lexicographically smallest in
  /// exhaustive mode, earliest sampled in Monte Carlo mode).
  std::size_t max_witnesses = 8;
};

struct Witness {
  std::string clause;                 // "completeness" or "soundness"
  std::vector<std::size_t> vertices;  // global left indices, ascending
  std::uint64_t size = 0;             // |N(vertices)|
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Statistics over the tuples a verifier looked at. Clause verdicts are
/// methods computed from these numbers.
///
/// "complete" tuples are k-sets (threshold) or one vertex per class
/// (panchromatic); "sound" tuples are (k+1)-sets (threshold) or k-subsets
/// that hit some class twice (panchromatic).
struct VerificationReport {
  GraphKind kind = GraphKind::unspecified;
  VerifyMode mode = VerifyMode::exhaustive;
  unsigned k = 0;
  std::uint64_t num_left = 0;
  std::uint64_t b_size = 0;
  Rational t{0};
  Rational s{0};
  ProbabilityTarget p;
  bool soundness_vacuous = false;
  std::uint64_t seed = 0;  // Monte Carlo only

  std::uint64_t complete_population = 0;  // full tuple counts, saturating
  std::uint64_t sound_population = 0;
  std::uint64_t complete_checked = 0;
  std::uint64_t min_complete = 0;
  std::uint64_t max_complete = 0;
  std::uint64_t complete_violations = 0;
  std::uint64_t exact_t_count = 0;  // panchromatic: tuples with |N| = t
  std::uint64_t sound_checked = 0;
  std::uint64_t max_sound = 0;
  std::uint64_t sound_violations = 0;

  std::vector<Witness> witnesses;

  std::uint64_t tuples_checked() const { return complete_checked + sound_checked; }
  /// Threshold: every k-set has |N| >= t. Panchromatic: every tuple has |N| <= t.
  bool completeness_passed() const { return complete_violations == 0; }
  /// Panchromatic only: the fraction of tuples with |N| = t is at least p.
  bool fraction_passed() const;
  bool soundness_passed() const { return sound_violations == 0; }
  /// All clauses, the fraction clause only when include_fraction is set.
  bool passed(bool include_fraction = false) const;

  Rational frac_exact_t() const;
  Interval frac_interval() const { return wilson_interval(exact_t_count, complete_checked); }

  /// key=value lines, one statistic per line.
  std::string to_text() const;
};

/// Certifies Definition-style threshold clauses on an uncoloured graph.
/// k and thresholds come from g.params() unless k_override is nonzero.
VerificationReport verify_threshold(const ColouredBipartiteGraph& g, const VerifyOptions& options,
                                    unsigned k_override = 0);

/// Panchromatic clauses on a graph with k >= 2 classes (k = class count).
VerificationReport verify_panchromatic(const ColouredBipartiteGraph& g, const VerifyOptions& options);

/// Number of k-subsets of a class-partitioned set that hit some class twice.
std::uint64_t repeated_colour_count(std::span<const std::size_t> class_sizes, unsigned k);

/// Distribution of Z = |V(f_1, ..., f_t) ∩ F_q^k| for independent uniform
/// f_i of degree <= degrees[i].
struct ZHistogram {
  unsigned k = 0;
  std::vector<unsigned> degrees;
  std::uint64_t q = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t trials = 0;
  bool exact = false;
  std::uint64_t seed = 0;  // Monte Carlo only

  std::uint64_t count_equal(std::uint64_t z) const;
  std::uint64_t count_greater(std::uint64_t z) const;
  Rational prob_equal(std::uint64_t z) const;
  Rational prob_greater(std::uint64_t z) const;
  double mean() const;
  std::string to_text() const;
};

/// Monte Carlo: trials independent systems drawn from substreams of seed.
ZHistogram bezout_trials(unsigned k, std::span<const unsigned> degrees, std::uint64_t q, std::uint64_t trials,
                         std::uint64_t seed, std::uint64_t budget = kDefaultBudget);

/// Exact distribution over the full product sample space. Throws
/// BudgetExceeded when prod q^{r_i} exceeds budget.
ZHistogram bezout_exact(unsigned k, std::span<const unsigned> degrees, std::uint64_t q,
                        std::uint64_t budget = kDefaultBudget);

struct VanishResult {
  Rational probability{1};
  std::uint64_t vanishing = 0;
  std::uint64_t total = 0;
  /// q > C(m, 2) and d >= m - 1.
  bool hypotheses_hold = true;
};

/// Exact fraction of polynomials of degree <= d in k variables that vanish
/// at every point. Throws DuplicatePoints, InvalidArgument for malformed
/// points, BudgetExceeded when q^r exceeds budget.
VanishResult vanish_probability_exact(unsigned k, unsigned d, std::uint64_t q, std::span<const Point> points,
                                      std::uint64_t budget = kDefaultBudget);

}  // namespace extremal
