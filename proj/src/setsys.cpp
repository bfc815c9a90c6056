#include "extremal/setsys.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <tuple>

#include "extremal/combinatorics.hpp"

namespace extremal {

std::size_t SetSystemInstance::num_sets() const {
  std::size_t n = 0;
  for (const auto& c : collections) n += c.size();
  return n;
}

void SetSystemInstance::validate() const {
  if (coloured) {
    if (collections.size() < 2) throw InvalidArgument("coloured instance needs at least 2 collections");
    if (k != collections.size()) throw InvalidArgument("coloured instance needs k equal to the collection count");
  } else if (collections.size() != 1) {
    throw InvalidArgument("uncoloured instance needs exactly one collection");
  }
  for (const auto& col : collections)
    for (const auto& set : col)
      if (set.size() != universe_size) throw InvalidArgument("set width differs from universe size");
}

Bitset make_set(std::size_t universe_size, std::span<const std::size_t> elements) {
  Bitset b(universe_size);
  for (auto e : elements) {
    if (e >= universe_size) throw InvalidArgument("set element outside the universe");
    b.set(e);
  }
  return b;
}

Bitset make_set(std::size_t universe_size, std::initializer_list<std::size_t> elements) {
  return make_set(universe_size, std::span<const std::size_t>(elements.begin(), elements.size()));
}

SetSystemInstance flatten(const SetSystemInstance& inst, unsigned k) {
  SetSystemInstance out;
  out.universe_size = inst.universe_size;
  out.coloured = false;
  out.k = k;
  out.c = inst.c;
  out.s = inst.s;
  out.collections.emplace_back();
  for (const auto& col : inst.collections)
    out.collections[0].insert(out.collections[0].end(), col.begin(), col.end());
  return out;
}

namespace {

using Word = Bitset::Word;
constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

enum class Combine { intersect, unite };

/// Exhaustive search over k-tuples drawn either as a strictly increasing
/// index tuple of one pool (combination) or one element per pool (product).
/// score() is monotone along a prefix: nonincreasing for intersect,
/// nondecreasing for unite. A prefix is dropped only when its score is
/// strictly worse than the best completed tuple so far, so every optimal
/// tuple is still reached and the lexicographic tie-break is exact.
template <class Score>
Solution exhaustive_search(std::span<const std::vector<Bitset>> pools, std::size_t k, bool combination,
                           Combine combine, bool maximize, std::size_t words, Score score) {
  const std::vector<Bitset>& first_pool = pools[0];
  const std::size_t n0 = combination ? first_pool.size() - k + 1 : first_pool.size();
  std::atomic<std::uint64_t> global(maximize ? 0 : kNone);

  auto worse = [maximize](std::uint64_t a, std::uint64_t b) { return maximize ? a < b : a > b; };
  auto improve_global = [&](std::uint64_t v) {
    std::uint64_t cur = global.load(std::memory_order_relaxed);
    while (worse(cur, v) && !global.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  };

  bool have = false;
  Solution best;

#pragma omp parallel
  {
    bool local_have = false;
    Solution local;
    std::vector<Word> levels(k * words);
    std::vector<std::size_t> chosen(k);
    auto level = [&](std::size_t d) { return std::span<Word>(levels.data() + d * words, words); };
    auto pool = [&](std::size_t d) -> const std::vector<Bitset>& { return combination ? first_pool : pools[d]; };

    auto consider = [&](std::uint64_t v) {
      if (!local_have || worse(local.value, v) || (local.value == v && chosen < local.indices)) {
        local.value = v;
        local.indices = chosen;
        local_have = true;
      }
      improve_global(v);
    };

#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t f = 0; f < static_cast<std::int64_t>(n0); ++f) {
      chosen[0] = static_cast<std::size_t>(f);
      auto src = first_pool[chosen[0]].words();
      std::copy(src.begin(), src.end(), level(0).begin());
      const std::uint64_t s0 = score(std::span<const Word>(level(0)));
      if (worse(s0, global.load(std::memory_order_relaxed))) continue;
      if (k == 1) {
        consider(s0);
        continue;
      }
      auto dfs = [&](auto&& self, std::size_t depth) -> void {
        const auto& p = pool(depth);
        const std::size_t lo = combination ? chosen[depth - 1] + 1 : 0;
        const std::size_t hi = combination ? p.size() - (k - 1 - depth) : p.size();
        for (std::size_t j = lo; j < hi; ++j) {
          chosen[depth] = j;
          if (combine == Combine::intersect) {
            and_into(level(depth), level(depth - 1), p[j].words());
          } else {
            or_into(level(depth), level(depth - 1), p[j].words());
          }
          const std::uint64_t v = score(std::span<const Word>(level(depth)));
          if (worse(v, global.load(std::memory_order_relaxed))) continue;
          if (depth + 1 == k) {
            consider(v);
          } else {
            self(self, depth + 1);
          }
        }
      };
      dfs(dfs, 1);
    }

#pragma omp critical
    if (local_have) {
      if (!have || worse(best.value, local.value) || (best.value == local.value && local.indices < best.indices)) {
        best = local;
        have = true;
      }
    }
  }
  if (!have) throw Error("exhaustive search found no tuple");
  return best;
}

std::uint64_t popcount_words(std::span<const Word> w) {
  std::uint64_t c = 0;
  for (auto x : w) c += static_cast<std::uint64_t>(std::popcount(x));
  return c;
}

void check_budget(const char* what, std::optional<std::uint64_t> required, std::uint64_t budget) {
  if (!required || *required > budget) throw BudgetExceeded(what, required.value_or(kNone), budget);
}

std::optional<std::uint64_t> product_of(std::span<const std::size_t> sizes) {
  std::optional<std::uint64_t> acc = 1;
  for (auto s : sizes) {
    if (!acc) break;
    acc = checked_mul(*acc, s);
  }
  return acc;
}

const std::vector<Bitset>& single_collection(const SetSystemInstance& inst) {
  if (inst.collections.size() != 1) throw InvalidArgument("operation needs an uncoloured instance");
  return inst.collections[0];
}

}  // namespace

Solution solve_max_intersection(const SetSystemInstance& inst, unsigned k, std::uint64_t budget) {
  const auto& sets = single_collection(inst);
  if (k == 0 || k > sets.size()) throw InvalidArgument("k must be between 1 and the number of sets");
  check_budget("max intersection search", checked_binomial(sets.size(), k), budget);
  return exhaustive_search(std::span(inst.collections), k, true, Combine::intersect, true,
                           Bitset::word_count_for(inst.universe_size), popcount_words);
}

Solution solve_panchromatic(const SetSystemInstance& inst, std::uint64_t budget) {
  if (inst.collections.empty()) throw InvalidArgument("instance has no collections");
  std::vector<std::size_t> sizes;
  for (const auto& c : inst.collections) {
    if (c.empty()) throw InvalidArgument("panchromatic search needs nonempty collections");
    sizes.push_back(c.size());
  }
  check_budget("panchromatic search", product_of(sizes), budget);
  return exhaustive_search(std::span(inst.collections), inst.collections.size(), false, Combine::intersect, true,
                           Bitset::word_count_for(inst.universe_size), popcount_words);
}

std::uint64_t monochromatic_number(const SetSystemInstance& inst, unsigned k, std::uint64_t budget) {
  return solve_max_intersection(flatten(inst, k), k, budget).value;
}

Solution solve_min_coverage(const SetSystemInstance& inst, unsigned k, std::uint64_t budget) {
  const auto& sets = single_collection(inst);
  if (k == 0 || k > sets.size()) throw InvalidArgument("k must be between 1 and the number of sets");
  check_budget("min coverage search", checked_binomial(sets.size(), k), budget);
  return exhaustive_search(std::span(inst.collections), k, true, Combine::unite, false,
                           Bitset::word_count_for(inst.universe_size), popcount_words);
}

// ---------------------------------------------------------------------------
// MaxCover

MaxCoverInstance::MaxCoverInstance(std::vector<std::size_t> left, std::vector<std::size_t> right)
    : left_sizes(std::move(left)), right_sizes(std::move(right)) {
  std::size_t n_left = 0;
  for (auto s : left_sizes) n_left += s;
  adjacency.assign(n_left, Bitset(num_right()));
}

std::size_t MaxCoverInstance::num_right() const {
  std::size_t n = 0;
  for (auto s : right_sizes) n += s;
  return n;
}

std::size_t MaxCoverInstance::left_offset(std::size_t cls) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < cls; ++i) off += left_sizes[i];
  return off;
}

std::size_t MaxCoverInstance::right_offset(std::size_t super) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < super; ++i) off += right_sizes[i];
  return off;
}

void MaxCoverInstance::validate() const {
  if (left_sizes.empty()) throw InvalidArgument("MaxCover instance needs at least one left super-node");
  if (right_sizes.empty()) throw InvalidArgument("MaxCover instance needs at least one right super-node");
  for (auto s : left_sizes)
    if (s == 0) throw InvalidArgument("empty left super-node");
  for (auto s : right_sizes)
    if (s == 0) throw InvalidArgument("empty right super-node");
  std::size_t n_left = 0;
  for (auto s : left_sizes) n_left += s;
  if (adjacency.size() != n_left) throw InvalidArgument("adjacency row count differs from left node count");
  for (const auto& row : adjacency)
    if (row.size() != num_right()) throw InvalidArgument("adjacency row width differs from right node count");
}

namespace {

/// Covered super-nodes of a common-neighbour bitset.
std::uint64_t count_covered(std::span<const Word> common, std::span<const std::size_t> right_sizes) {
  std::uint64_t covered = 0;
  std::size_t pos = 0;
  for (auto size : right_sizes) {
    bool any = false;
    for (std::size_t i = pos; i < pos + size && !any; ++i) any = (common[i / 64] >> (i % 64)) & 1u;
    covered += any ? 1 : 0;
    pos += size;
  }
  return covered;
}

std::vector<std::vector<Bitset>> left_pools(const MaxCoverInstance& inst) {
  std::vector<std::vector<Bitset>> pools;
  std::size_t v = 0;
  for (auto size : inst.left_sizes) {
    pools.emplace_back(inst.adjacency.begin() + static_cast<std::ptrdiff_t>(v),
                       inst.adjacency.begin() + static_cast<std::ptrdiff_t>(v + size));
    v += size;
  }
  return pools;
}

}  // namespace

std::uint64_t covered_super_nodes(const MaxCoverInstance& inst, std::span<const std::size_t> labeling) {
  if (labeling.size() != inst.left_sizes.size()) throw InvalidArgument("labeling needs one node per left super-node");
  Bitset common(inst.num_right(), true);
  for (std::size_t i = 0; i < labeling.size(); ++i) {
    if (labeling[i] >= inst.left_sizes[i]) throw InvalidArgument("labeling index out of range");
    common &= inst.adjacency[inst.left_offset(i) + labeling[i]];
  }
  return count_covered(common.words(), inst.right_sizes);
}

MaxCoverSolution solve_maxcover(const MaxCoverInstance& inst, std::uint64_t budget) {
  inst.validate();
  check_budget("MaxCover search", product_of(inst.left_sizes), budget);
  const auto pools = left_pools(inst);
  const auto& right = inst.right_sizes;
  const Solution s = exhaustive_search(std::span(pools), pools.size(), false, Combine::intersect, true,
                                       Bitset::word_count_for(inst.num_right()),
                                       [&right](std::span<const Word> w) { return count_covered(w, right); });
  MaxCoverSolution out;
  out.labeling = s.indices;
  out.covered = s.value;
  out.fraction = Rational(static_cast<std::int64_t>(s.value), static_cast<std::int64_t>(right.size()));
  return out;
}

bool is_unique_maxcover(const MaxCoverInstance& inst, std::uint64_t budget) {
  inst.validate();
  auto labelings = product_of(inst.left_sizes);
  check_budget("Unique MaxCover check", labelings ? checked_mul(*labelings, inst.right_sizes.size()) : std::nullopt,
               budget);
  const auto pools = left_pools(inst);
  const std::size_t k = pools.size();
  const std::size_t words = Bitset::word_count_for(inst.num_right());

  auto at_most_one_each = [&](std::span<const Word> common) {
    std::size_t pos = 0;
    for (auto size : inst.right_sizes) {
      std::size_t c = 0;
      for (std::size_t i = pos; i < pos + size; ++i) c += (common[i / 64] >> (i % 64)) & 1u;
      if (c > 1) return false;
      pos += size;
    }
    return true;
  };

  std::atomic<bool> unique(true);
#pragma omp parallel
  {
    std::vector<Word> levels(k * words);
    auto level = [&](std::size_t d) { return std::span<Word>(levels.data() + d * words, words); };
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t f = 0; f < static_cast<std::int64_t>(pools[0].size()); ++f) {
      if (!unique.load(std::memory_order_relaxed)) continue;
      auto src = pools[0][static_cast<std::size_t>(f)].words();
      std::copy(src.begin(), src.end(), level(0).begin());
      // Common neighbourhoods only shrink, so a prefix with at most one
      // common neighbour per super-node settles its whole subtree.
      auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (at_most_one_each(level(depth - 1))) return true;
        if (depth == k) return false;
        for (const auto& row : pools[depth]) {
          and_into(level(depth), level(depth - 1), row.words());
          if (!self(self, depth + 1)) return false;
        }
        return true;
      };
      if (!dfs(dfs, 1)) unique.store(false, std::memory_order_relaxed);
    }
  }
  return unique.load();
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct LineReader {
  std::istringstream in;
  std::size_t line_no = 0;
  explicit LineReader(const std::string& text) : in(text) {}

  /// Next non-empty, non-comment line split into tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      for (std::string t; ls >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw MalformedInput(what, line_no); }

  std::uint64_t number(const std::string& token) const {
    std::uint64_t v = 0;
    std::size_t used = 0;
    try {
      v = std::stoull(token, &used);
    } catch (const std::exception&) {
      fail("expected a nonnegative integer, got '" + token + "'");
    }
    if (used != token.size() || token[0] == '-') fail("expected a nonnegative integer, got '" + token + "'");
    return v;
  }
  Rational rational(const std::string& token) const {
    try {
      return Rational::parse(token);
    } catch (const Error&) {
      fail("expected a rational, got '" + token + "'");
    }
  }
  void expect_args(const std::vector<std::string>& tokens, std::size_t n) const {
    if (tokens.size() != n + 1) fail("'" + tokens[0] + "' takes " + std::to_string(n) + " argument(s)");
  }
};

}  // namespace

std::string format_instance(const SetSystemInstance& inst) {
  std::ostringstream os;
  os << "setsystem\n"
     << "universe " << inst.universe_size << '\n'
     << "coloured " << (inst.coloured ? 1 : 0) << '\n'
     << "k " << inst.k << '\n'
     << "c " << inst.c << '\n'
     << "s " << inst.s << '\n';
  for (const auto& col : inst.collections) {
    os << "collection\n";
    for (const auto& set : col) {
      os << "set";
      for (auto e : set.indices()) os << ' ' << e;
      os << '\n';
    }
  }
  return os.str();
}

SetSystemInstance parse_instance(const std::string& text) {
  LineReader r(text);
  std::vector<std::string> tok;
  if (!r.next(tok) || tok[0] != "setsystem") r.fail("expected 'setsystem' header");
  SetSystemInstance inst;
  bool have_universe = false;
  while (r.next(tok)) {
    const std::string& key = tok[0];
    if (key == "universe") {
      r.expect_args(tok, 1);
      inst.universe_size = r.number(tok[1]);
      have_universe = true;
    } else if (key == "coloured") {
      r.expect_args(tok, 1);
      const auto v = r.number(tok[1]);
      if (v > 1) r.fail("coloured must be 0 or 1");
      inst.coloured = v == 1;
    } else if (key == "k") {
      r.expect_args(tok, 1);
      inst.k = static_cast<unsigned>(r.number(tok[1]));
    } else if (key == "c") {
      r.expect_args(tok, 1);
      inst.c = r.rational(tok[1]);
    } else if (key == "s") {
      r.expect_args(tok, 1);
      inst.s = r.rational(tok[1]);
    } else if (key == "collection") {
      r.expect_args(tok, 0);
      if (!have_universe) r.fail("'universe' must precede the sets");
      inst.collections.emplace_back();
    } else if (key == "set") {
      if (inst.collections.empty()) r.fail("'set' before any 'collection'");
      Bitset b(inst.universe_size);
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const auto e = r.number(tok[i]);
        if (e >= inst.universe_size) r.fail("set element " + tok[i] + " outside the universe");
        b.set(e);
      }
      inst.collections.back().push_back(std::move(b));
    } else {
      r.fail("unknown keyword '" + key + "'");
    }
  }
  try {
    inst.validate();
  } catch (const InvalidArgument& e) {
    r.fail(e.what());
  }
  return inst;
}

std::string format_maxcover(const MaxCoverInstance& inst) {
  std::ostringstream os;
  os << "maxcover\nleft";
  for (auto s : inst.left_sizes) os << ' ' << s;
  os << "\nright";
  for (auto s : inst.right_sizes) os << ' ' << s;
  os << "\nc " << inst.c << "\ns " << inst.s << '\n';
  for (std::size_t v = 0; v < inst.adjacency.size(); ++v)
    for (auto w : inst.adjacency[v].indices()) os << "edge " << v << ' ' << w << '\n';
  return os.str();
}

MaxCoverInstance parse_maxcover(const std::string& text) {
  LineReader r(text);
  std::vector<std::string> tok;
  if (!r.next(tok) || tok[0] != "maxcover") r.fail("expected 'maxcover' header");
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  Rational c{1};
  Rational s{0};
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;  // v, w, line
  while (r.next(tok)) {
    const std::string& key = tok[0];
    if (key == "left" || key == "right") {
      if (tok.size() < 2) r.fail("'" + key + "' needs at least one size");
      auto& dst = key == "left" ? left : right;
      dst.clear();
      for (std::size_t i = 1; i < tok.size(); ++i) dst.push_back(r.number(tok[i]));
    } else if (key == "c") {
      r.expect_args(tok, 1);
      c = r.rational(tok[1]);
    } else if (key == "s") {
      r.expect_args(tok, 1);
      s = r.rational(tok[1]);
    } else if (key == "edge") {
      r.expect_args(tok, 2);
      edges.emplace_back(r.number(tok[1]), r.number(tok[2]), r.line_no);
    } else {
      r.fail("unknown keyword '" + key + "'");
    }
  }
  MaxCoverInstance inst(left, right);
  inst.c = c;
  inst.s = s;
  try {
    inst.validate();
  } catch (const InvalidArgument& e) {
    r.fail(e.what());
  }
  for (const auto& [v, w, line] : edges) {
    if (v >= inst.num_left() || w >= inst.num_right()) throw MalformedInput("edge endpoint out of range", line);
    inst.add_edge(v, w);
  }
  return inst;
}

std::string format_simple_graph(const SimpleGraph& g) {
  std::ostringstream os;
  os << "graph " << g.num_vertices << '\n';
  for (const auto& [u, v] : g.edges) os << "edge " << u << ' ' << v << '\n';
  return os.str();
}

SimpleGraph parse_simple_graph(const std::string& text) {
  LineReader r(text);
  std::vector<std::string> tok;
  if (!r.next(tok) || tok[0] != "graph") r.fail("expected 'graph <vertex count>' header");
  r.expect_args(tok, 1);
  SimpleGraph g;
  g.num_vertices = r.number(tok[1]);
  while (r.next(tok)) {
    if (tok[0] != "edge") r.fail("unknown keyword '" + tok[0] + "'");
    r.expect_args(tok, 2);
    auto u = r.number(tok[1]);
    auto v = r.number(tok[2]);
    if (u >= g.num_vertices || v >= g.num_vertices) r.fail("edge endpoint out of range");
    if (u == v) r.fail("self-loops are not allowed");
    if (u > v) std::swap(u, v);
    g.edges.emplace_back(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace extremal
