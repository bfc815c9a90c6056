#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extremal/bigraph.hpp"
#include "extremal/rng.hpp"
#include "extremal/setsys.hpp"

namespace extremal {

/// One set per left node (its neighbourhood over all right nodes), collection
/// i for super-node V_i; thresholds c' = c l, s' = s l with l right super-nodes.
SetSystemInstance maxcover_to_panchromatic(const MaxCoverInstance& inst);
SetSystemInstance maxcover_to_panchromatic(const MaxCoverInstance& inst, const Rational& c, const Rational& s);

enum class BijectionMode : std::uint8_t { canonical, random };

const char* to_string(BijectionMode mode);
BijectionMode parse_bijection_mode(const std::string& text);

struct PgcResult {
  SetSystemInstance instance;
  /// bijections[r][i] = local index in class r of H assigned to set i of C_r.
  std::vector<std::vector<std::size_t>> bijections;
  /// Monochromatic number used for the soundness threshold.
  std::uint64_t z = 0;
  /// Source (collection, position) of every set of the output, in order.
  std::vector<std::pair<std::size_t, std::size_t>> origin;
};

/// Composes a coloured instance with a k-class graph H. The universe is
/// U x B with (u, b) at index u |B| + b; the set of S in C_r holds (u, b)
/// for u in S and b adjacent to the image of S in H. Output sets are listed
/// collection by collection. Thresholds: c' = c t, s' = max(s t, z w) with
/// t, w = H's completeness target and soundness bound. z is computed by
/// monochromatic_number when absent. Random mode draws one uniform
/// permutation per collection, in collection order, from rng.
/// Throws SizeMismatch if |C_r| != |A_r| or the class count differs.
PgcResult pgc_compose(const SetSystemInstance& inst, const ColouredBipartiteGraph& h, BijectionMode mode, Rng& rng,
                      std::optional<std::uint64_t> z = std::nullopt, std::uint64_t budget = kDefaultBudget);

/// Composes an uncoloured MinCoverage instance over [n] with a graph H with
/// |A| = n (element i is left vertex i). Each set S becomes N_H(S) over
/// U' = B; thresholds (t, s) come from H. Throws SizeMismatch.
SetSystemInstance tgc_compose(const SetSystemInstance& inst, const ColouredBipartiteGraph& h);

/// One set per edge (u, v) of g0 (edge-list order), holding N_H({u, v}).
/// The query size of the output is C(k, 2); thresholds (t, s) from H.
/// Throws SizeMismatch if |V(g0)| != |A(H)|.
SetSystemInstance clique_tgc_compose(const SimpleGraph& g0, const ColouredBipartiteGraph& h, unsigned k);

}  // namespace extremal
