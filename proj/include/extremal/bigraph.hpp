#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extremal/bitset.hpp"
#include "extremal/errors.hpp"
#include "extremal/field.hpp"
#include "extremal/mpoly.hpp"
#include "extremal/rational.hpp"
#include "extremal/rng.hpp"

namespace extremal {

enum class GraphKind : std::uint8_t { unspecified = 0, threshold = 1, panchromatic = 2 };

const char* to_string(GraphKind kind);
GraphKind parse_graph_kind(const std::string& text);

/// Completeness fraction p, either an exact rational or 1/(scale * m!) kept
/// symbolic because m! is far out of integer range at real parameters.
class ProbabilityTarget {
 public:
  ProbabilityTarget() = default;
  static ProbabilityTarget exact(Rational p);
  static ProbabilityTarget inverse_factorial(std::uint64_t scale, std::uint64_t m);

  bool symbolic() const { return factorial_arg_ != 0; }
  const Rational& value() const { return value_; }
  std::uint64_t scale() const { return scale_; }
  std::uint64_t factorial_arg() const { return factorial_arg_; }

  /// count / total >= p, decided exactly. A vacuous total of 0 meets any p.
  bool met_by(std::uint64_t count, std::uint64_t total) const;

  std::string str() const;
  friend bool operator==(const ProbabilityTarget&, const ProbabilityTarget&) = default;

 private:
  Rational value_{1};
  std::uint64_t scale_ = 0;
  std::uint64_t factorial_arg_ = 0;
};

/// Construction parameters and the thresholds a graph is meant to satisfy.
struct GraphParams {
  GraphKind kind = GraphKind::unspecified;
  std::uint64_t q = 0;
  unsigned k = 0;
  unsigned d = 0;
  unsigned D = 0;       // panchromatic only
  unsigned lambda = 0;  // panchromatic only
  Rational t{0};        // completeness target
  Rational s{0};        // soundness bound
  ProbabilityTarget p;  // completeness fraction
  /// s >= |B|: the soundness clause cannot fail at this size.
  bool soundness_vacuous = false;

  friend bool operator==(const GraphParams&, const GraphParams&) = default;
};

/// Polynomials behind an algebraic graph. Right vertices are the points of
/// F_q^{k_vars} in canonical order, so they need no storage.
struct GraphLabels {
  std::uint32_t q = 0;
  unsigned k_vars = 0;
  std::vector<MPoly> vertex_polys;    // one per left vertex, global order
  std::vector<MPoly> class_shifts;    // panchromatic: w_i per class
  std::vector<MPoly> vertex_offsets;  // panchromatic: p per left vertex

  friend bool operator==(const GraphLabels&, const GraphLabels&) = default;
};

/// Bipartite graph G(A, B) whose left side is split into colour classes
/// A_1..A_k (k = 1 for an uncoloured left side). Left vertices are numbered
/// globally class by class: vertex j of class i has index
/// class_offset(i) + j. Adjacency is one bitset over B per left vertex.
class ColouredBipartiteGraph {
 public:
  ColouredBipartiteGraph() = default;
  ColouredBipartiteGraph(std::vector<std::size_t> class_sizes, std::size_t b_size);

  std::size_t num_classes() const { return class_sizes_.size(); }
  std::span<const std::size_t> class_sizes() const { return class_sizes_; }
  std::size_t class_size(std::size_t cls) const { return class_sizes_[cls]; }
  std::size_t class_offset(std::size_t cls) const { return offsets_[cls]; }
  std::size_t num_left() const { return rows_.size(); }
  std::size_t b_size() const { return b_size_; }

  std::size_t global_index(std::size_t cls, std::size_t local) const { return offsets_[cls] + local; }
  std::size_t class_of(std::size_t v) const;
  std::size_t local_index(std::size_t v) const { return v - offsets_[class_of(v)]; }

  const Bitset& row(std::size_t v) const { return rows_[v]; }
  Bitset& row(std::size_t v) { return rows_[v]; }
  void add_edge(std::size_t v, std::size_t b) { rows_[v].set(b); }
  bool adjacent(std::size_t v, std::size_t b) const { return rows_[v].test(b); }
  std::size_t degree(std::size_t v) const { return rows_[v].count(); }
  std::size_t words_per_row() const { return Bitset::word_count_for(b_size_); }

  const GraphParams& params() const { return params_; }
  void set_params(GraphParams p) { params_ = std::move(p); }
  const std::optional<GraphLabels>& labels() const { return labels_; }
  void set_labels(GraphLabels l) { labels_ = std::move(l); }

  friend bool operator==(const ColouredBipartiteGraph&, const ColouredBipartiteGraph&) = default;

 private:
  std::vector<std::size_t> class_sizes_;
  std::vector<std::size_t> offsets_;
  std::size_t b_size_ = 0;
  std::vector<Bitset> rows_;
  GraphParams params_;
  std::optional<GraphLabels> labels_;
};

/// Explicit graph for hand-built fixtures; edges are (global left, right).
ColouredBipartiteGraph from_edges(std::vector<std::size_t> class_sizes, std::size_t b_size,
                                  std::span<const std::pair<std::size_t, std::size_t>> edges);

/// B = F_q^{k_vars} in canonical order, f ~ x iff f(x) = 0. Rows are computed
/// in parallel over left vertices. Labels keep the polynomials.
ColouredBipartiteGraph from_polynomials(const std::vector<std::vector<MPoly>>& classes, const FieldSpec& field,
                                        unsigned k_vars, std::uint64_t budget = kDefaultBudget);

/// AND of the rows of S; the empty set gives all of B.
Bitset common_neighbourhood(const ColouredBipartiteGraph& g, std::span<const std::size_t> vertices);

/// Restriction of a graph to n_target vertices per class.
struct Restriction {
  ColouredBipartiteGraph graph;
  std::vector<std::size_t> kept;  // original global index of each new left vertex
};

/// Keeps a uniformly random n_target-subset of every class (each class
/// independently, survivors in original order). Throws InvalidTarget if
/// n_target exceeds a class size or is zero.
Restriction restrict_graph(const ColouredBipartiteGraph& g, std::size_t n_target, Rng& rng);

/// Versioned little-endian binary encoding.
///
///   "EXBG" u32:version
///   params: u8 kind, u64 q, u32 k, u32 d, u32 D, u32 lambda,
///           i64 t.num, i64 t.den, i64 s.num, i64 s.den,
///           i64 p.num, i64 p.den, u64 p.scale, u64 p.factorial_arg, u8 vacuous
///   u32 classes, u64 size per class, u64 b_size, u64 words_per_row
///   rows: num_left * words_per_row u64 words (bit b of row v = edge (v, b))
///   u8 has_labels; if set: u32 q, u32 k_vars, then three polynomial lists
///     (vertex_polys, class_shifts, vertex_offsets), each u64 count followed
///     by polynomials encoded as u32 q, u32 k, u32 d, u64 r, r * u32 coefficient
std::vector<std::uint8_t> serialize(const ColouredBipartiteGraph& g);
/// Throws MalformedInput with the byte offset of the first bad field.
ColouredBipartiteGraph deserialize(std::span<const std::uint8_t> bytes);

inline constexpr std::uint32_t kGraphFormatVersion = 1;

void write_graph(const std::filesystem::path& path, const ColouredBipartiteGraph& g);
ColouredBipartiteGraph read_graph(const std::filesystem::path& path);

}  // namespace extremal
