#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extremal/bitset.hpp"
#include "extremal/errors.hpp"
#include "extremal/rational.hpp"

namespace extremal {

/// A collection-of-sets instance. Uncoloured instances have one collection
/// and take k at query time; coloured instances have k >= 2 collections.
/// A set is identified by (collection, position), so equal sets in
/// different positions stay distinct.
struct SetSystemInstance {
  std::size_t universe_size = 0;
  bool coloured = false;
  unsigned k = 0;  // query size (uncoloured) or collection count (coloured)
  Rational c{0};
  Rational s{0};
  std::vector<std::vector<Bitset>> collections;

  std::size_t num_sets() const;
  /// Throws InvalidArgument when the structural invariants fail.
  void validate() const;
  /// c > s, the promise gap of the intersection problems.
  bool intersection_gap_ok() const { return c > s; }
  /// c < s, the promise gap of k-MinCoverage.
  bool coverage_gap_ok() const { return c < s; }

  friend bool operator==(const SetSystemInstance&, const SetSystemInstance&) = default;
};

/// Set of elements given as indices.
Bitset make_set(std::size_t universe_size, std::initializer_list<std::size_t> elements);
Bitset make_set(std::size_t universe_size, std::span<const std::size_t> elements);

/// All sets of all collections as one uncoloured collection, collection
/// order then position order.
SetSystemInstance flatten(const SetSystemInstance& inst, unsigned k);

struct Solution {
  std::vector<std::size_t> indices;  // per-collection positions for panchromatic
  std::uint64_t value = 0;
  friend bool operator==(const Solution&, const Solution&) = default;
};

/// k-subset of the (single) collection maximizing |∩|; ties go to the
/// lexicographically smallest index tuple.
Solution solve_max_intersection(const SetSystemInstance& inst, unsigned k, std::uint64_t budget = kDefaultBudget);

/// One set per collection maximizing |∩|, lexicographic tie-break.
Solution solve_panchromatic(const SetSystemInstance& inst, std::uint64_t budget = kDefaultBudget);

/// max |∩X| over k-subsets X of C_1 ∪ ... ∪ C_k with no colour constraint.
std::uint64_t monochromatic_number(const SetSystemInstance& inst, unsigned k, std::uint64_t budget = kDefaultBudget);

/// k-subset minimizing |∪|, lexicographic tie-break.
Solution solve_min_coverage(const SetSystemInstance& inst, unsigned k, std::uint64_t budget = kDefaultBudget);

/// Bipartite graph with left super-nodes V_1..V_k and right super-nodes
/// W_1..W_l. Nodes on each side are numbered globally, super-node by
/// super-node. adjacency[v] is a bitset over all right nodes.
struct MaxCoverInstance {
  std::vector<std::size_t> left_sizes;
  std::vector<std::size_t> right_sizes;
  std::vector<Bitset> adjacency;
  Rational c{1};
  Rational s{0};

  MaxCoverInstance() = default;
  MaxCoverInstance(std::vector<std::size_t> left, std::vector<std::size_t> right);

  std::size_t num_left() const { return adjacency.size(); }
  std::size_t num_right() const;
  std::size_t left_offset(std::size_t cls) const;
  std::size_t right_offset(std::size_t super) const;
  void add_edge(std::size_t v, std::size_t w) { adjacency.at(v).set(w); }
  void validate() const;

  friend bool operator==(const MaxCoverInstance&, const MaxCoverInstance&) = default;
};

struct MaxCoverSolution {
  std::vector<std::size_t> labeling;  // local index per left super-node
  std::uint64_t covered = 0;
  Rational fraction{0};
};

/// Number of right super-nodes covered by a labeling.
std::uint64_t covered_super_nodes(const MaxCoverInstance& inst, std::span<const std::size_t> labeling);

MaxCoverSolution solve_maxcover(const MaxCoverInstance& inst, std::uint64_t budget = kDefaultBudget);

/// Every labeling has at most one common neighbour in every right super-node.
bool is_unique_maxcover(const MaxCoverInstance& inst, std::uint64_t budget = kDefaultBudget);

/// Text formats, '#' starts a comment line.
///
/// Set system:
///   setsystem
///   universe <n>
///   coloured <0|1>
///   k <k>
///   c <rational>
///   s <rational>
///   collection            (repeated; starts the next collection)
///   set <e1> <e2> ...     (elements of one set; "set" alone is empty)
///
/// MaxCover:
///   maxcover
///   left <|V_1|> ... <|V_k|>
///   right <|W_1|> ... <|W_l|>
///   c <rational>
///   s <rational>
///   edge <left global index> <right global index>   (repeated)
///
/// Simple graph:
///   graph <vertex count>
///   edge <u> <v>   (repeated, u != v)
///
/// Parse errors throw MalformedInput carrying the line number.
std::string format_instance(const SetSystemInstance& inst);
SetSystemInstance parse_instance(const std::string& text);
std::string format_maxcover(const MaxCoverInstance& inst);
MaxCoverInstance parse_maxcover(const std::string& text);

struct SimpleGraph {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v, sorted, unique
  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
};
std::string format_simple_graph(const SimpleGraph& g);
SimpleGraph parse_simple_graph(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace extremal
