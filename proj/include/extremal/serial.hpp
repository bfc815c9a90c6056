#pragma once

// Straightforward single-threaded versions of the parallel kernels. They
// share no enumeration or pruning code with the fast paths and exist to
// cross-check them in tests and benchmarks.

#include <cstdint>
#include <span>
#include <vector>

#include "extremal/bigraph.hpp"
#include "extremal/mpoly.hpp"
#include "extremal/setsys.hpp"
#include "extremal/verify.hpp"

namespace extremal::serial {

/// sum_i c_i prod_j x_j^{a_ij} by repeated exponentiation.
FieldElement evaluate_naive(const FieldSpec& field, const MPoly& f, std::span<const FieldElement> x);

ColouredBipartiteGraph from_polynomials(const std::vector<std::vector<MPoly>>& classes, const FieldSpec& field,
                                        unsigned k_vars);

Bitset zero_set_bits(std::span<const MPoly> fs, const FieldSpec& field);

/// Exhaustive only; every tuple's neighbourhood is recomputed from scratch.
/// Witnesses are the first violations in lexicographic order of the sorted
/// global vertex tuple.
VerificationReport verify_threshold(const ColouredBipartiteGraph& g, unsigned k, std::size_t max_witnesses = 8);
VerificationReport verify_panchromatic(const ColouredBipartiteGraph& g, std::size_t max_witnesses = 8);

Solution solve_max_intersection(const SetSystemInstance& inst, unsigned k);
Solution solve_panchromatic(const SetSystemInstance& inst);
Solution solve_min_coverage(const SetSystemInstance& inst, unsigned k);
MaxCoverSolution solve_maxcover(const MaxCoverInstance& inst);

ZHistogram bezout_exact(unsigned k, std::span<const unsigned> degrees, std::uint64_t q);
VanishResult vanish_probability_exact(unsigned k, unsigned d, std::uint64_t q, std::span<const Point> points);

}  // namespace extremal::serial
