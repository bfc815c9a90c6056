#include "extremal/bigraph.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "extremal/combinatorics.hpp"

namespace extremal {

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::threshold:
      return "threshold";
    case GraphKind::panchromatic:
      return "panchromatic";
    case GraphKind::unspecified:
      break;
  }
  return "unspecified";
}

GraphKind parse_graph_kind(const std::string& text) {
  if (text == "threshold") return GraphKind::threshold;
  if (text == "panchromatic") return GraphKind::panchromatic;
  if (text == "unspecified") return GraphKind::unspecified;
  throw InvalidArgument("unknown graph kind: " + text);
}

ProbabilityTarget ProbabilityTarget::exact(Rational p) {
  ProbabilityTarget t;
  t.value_ = p;
  return t;
}

ProbabilityTarget ProbabilityTarget::inverse_factorial(std::uint64_t scale, std::uint64_t m) {
  if (scale == 0 || m == 0) throw InvalidArgument("inverse factorial target needs scale, m >= 1");
  ProbabilityTarget t;
  t.value_ = Rational(0);
  t.scale_ = scale;
  t.factorial_arg_ = m;
  return t;
}

bool ProbabilityTarget::met_by(std::uint64_t count, std::uint64_t total) const {
  if (total == 0) return true;
  if (!symbolic()) {
    return static_cast<__int128>(count) * value_.den() >= static_cast<__int128>(value_.num()) * total;
  }
  // count * scale * m! >= total, stopping as soon as the product reaches total.
  if (count == 0) return false;
  unsigned __int128 acc = static_cast<unsigned __int128>(count) * scale_;
  for (std::uint64_t i = 2; i <= factorial_arg_ && acc < total; ++i) acc *= i;
  return acc >= total;
}

std::string ProbabilityTarget::str() const {
  if (!symbolic()) return value_.str();
  return "1/(" + std::to_string(scale_) + "*" + std::to_string(factorial_arg_) + "!)";
}

ColouredBipartiteGraph::ColouredBipartiteGraph(std::vector<std::size_t> class_sizes, std::size_t b_size)
    : class_sizes_(std::move(class_sizes)), b_size_(b_size) {
  if (class_sizes_.empty()) throw InvalidArgument("a graph needs at least one left class");
  std::size_t total = 0;
  offsets_.reserve(class_sizes_.size());
  for (auto s : class_sizes_) {
    offsets_.push_back(total);
    total += s;
  }
  rows_.assign(total, Bitset(b_size_));
}

std::size_t ColouredBipartiteGraph::class_of(std::size_t v) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
  std::size_t cls = static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
  // Skip empty classes sharing an offset.
  while (cls + 1 < offsets_.size() && offsets_[cls + 1] <= v) ++cls;
  return cls;
}

ColouredBipartiteGraph from_edges(std::vector<std::size_t> class_sizes, std::size_t b_size,
                                  std::span<const std::pair<std::size_t, std::size_t>> edges) {
  ColouredBipartiteGraph g(std::move(class_sizes), b_size);
  for (const auto& [v, b] : edges) {
    if (v >= g.num_left() || b >= b_size) throw InvalidArgument("edge endpoint out of range");
    g.add_edge(v, b);
  }
  return g;
}

ColouredBipartiteGraph from_polynomials(const std::vector<std::vector<MPoly>>& classes, const FieldSpec& field,
                                        unsigned k_vars, std::uint64_t budget) {
  std::vector<std::size_t> sizes;
  std::vector<const MPoly*> flat;
  unsigned d = 0;
  for (const auto& cls : classes) {
    sizes.push_back(cls.size());
    for (const auto& f : cls) {
      if (f.num_vars() != k_vars) throw InvalidArgument("polynomial variable count differs from k_vars");
      d = std::max(d, f.degree_bound());
      flat.push_back(&f);
    }
  }
  const auto basis = MonomialBasis::make(k_vars, d);
  const PointTable table(field, basis, budget);
  const std::size_t n_points = table.num_points();
  ColouredBipartiteGraph g(std::move(sizes), n_points);

  const auto n_left = static_cast<std::int64_t>(flat.size());
  const std::size_t r = basis->size();
#pragma omp parallel
  {
    std::vector<FieldElement> coeffs(r);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t v = 0; v < n_left; ++v) {
      const MPoly& f = *flat[static_cast<std::size_t>(v)];
      std::fill(coeffs.begin(), coeffs.end(), FieldElement{});
      std::copy(f.coeffs().begin(), f.coeffs().end(), coeffs.begin());
      Bitset& row = g.row(static_cast<std::size_t>(v));
      auto words = row.words();
      for (std::size_t w = 0; w < words.size(); ++w) {
        Bitset::Word bits = 0;
        const std::size_t first = w * Bitset::kWordBits;
        const std::size_t last = std::min(n_points, first + Bitset::kWordBits);
        for (std::size_t i = first; i < last; ++i) {
          if (field.dot(coeffs, table.row(i)).value == 0) bits |= Bitset::Word{1} << (i - first);
        }
        words[w] = bits;
      }
    }
  }

  GraphLabels labels;
  labels.q = field.order();
  labels.k_vars = k_vars;
  labels.vertex_polys.reserve(flat.size());
  for (const auto* f : flat) labels.vertex_polys.push_back(*f);
  g.set_labels(std::move(labels));
  return g;
}

Bitset common_neighbourhood(const ColouredBipartiteGraph& g, std::span<const std::size_t> vertices) {
  Bitset out(g.b_size(), true);
  for (auto v : vertices) {
    if (v >= g.num_left()) throw InvalidArgument("left vertex index out of range");
    out &= g.row(v);
  }
  return out;
}

Restriction restrict_graph(const ColouredBipartiteGraph& g, std::size_t n_target, Rng& rng) {
  if (n_target == 0) throw InvalidTarget("restriction target must be positive");
  for (auto s : g.class_sizes()) {
    if (n_target > s) {
      throw InvalidTarget("restriction target " + std::to_string(n_target) + " exceeds class size " +
                          std::to_string(s));
    }
  }
  Restriction out;
  for (std::size_t cls = 0; cls < g.num_classes(); ++cls) {
    std::vector<std::size_t> perm(g.class_size(cls));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = 0; i < n_target; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(perm.size() - i));
      std::swap(perm[i], perm[j]);
    }
    perm.resize(n_target);
    std::sort(perm.begin(), perm.end());
    for (auto local : perm) out.kept.push_back(g.global_index(cls, local));
  }

  out.graph = ColouredBipartiteGraph(std::vector<std::size_t>(g.num_classes(), n_target), g.b_size());
  for (std::size_t v = 0; v < out.kept.size(); ++v) out.graph.row(v) = g.row(out.kept[v]);
  out.graph.set_params(g.params());
  if (const auto& src = g.labels()) {
    GraphLabels labels;
    labels.q = src->q;
    labels.k_vars = src->k_vars;
    labels.class_shifts = src->class_shifts;
    for (auto v : out.kept) {
      if (!src->vertex_polys.empty()) labels.vertex_polys.push_back(src->vertex_polys[v]);
      if (!src->vertex_offsets.empty()) labels.vertex_offsets.push_back(src->vertex_offsets[v]);
    }
    out.graph.set_labels(std::move(labels));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Binary format

namespace {

constexpr char kMagic[4] = {'E', 'X', 'B', 'G'};

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
  void bytes(const char* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1, "u8")); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4, "u32")); }
  std::uint64_t u64() { return get(8, "u64"); }
  std::int64_t i64() { return static_cast<std::int64_t>(get(8, "i64")); }
  std::size_t offset() const { return pos_; }
  bool at_end() const { return pos_ == in_.size(); }
  void need(std::uint64_t n, const char* what) const {
    if (n > in_.size() - pos_) throw MalformedInput(std::string("truncated ") + what, pos_);
  }
  [[noreturn]] void fail(const std::string& what) const { throw MalformedInput(what, pos_); }

 private:
  std::uint64_t get(int n, const char* what) {
    need(static_cast<std::uint64_t>(n), what);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void write_rational(Writer& w, const Rational& r) {
  w.i64(r.num());
  w.i64(r.den());
}

Rational read_rational(Reader& r) {
  const std::size_t at = r.offset();
  const std::int64_t num = r.i64();
  const std::int64_t den = r.i64();
  if (den <= 0) throw MalformedInput("non-positive rational denominator", at);
  return Rational(num, den);
}

void write_poly(Writer& w, std::uint32_t q, const MPoly& f) {
  w.u32(q);
  w.u32(f.num_vars());
  w.u32(f.degree_bound());
  w.u64(f.coeffs().size());
  for (auto c : f.coeffs()) w.u32(c.value);
}

MPoly read_poly(Reader& r, std::uint32_t expected_q) {
  const std::size_t at = r.offset();
  const std::uint32_t q = r.u32();
  const std::uint32_t k = r.u32();
  const std::uint32_t d = r.u32();
  const std::uint64_t size = r.u64();
  if (q != expected_q) throw MalformedInput("polynomial field order differs from label field", at);
  if (k == 0 || k > 64 || d > 0xffff) throw MalformedInput("bad polynomial shape", at);
  auto expected = checked_binomial(static_cast<std::uint64_t>(k) + d, k);
  if (!expected || *expected != size) throw MalformedInput("polynomial size does not match C(k+d, k)", at);
  r.need(size * 4, "polynomial coefficients");
  std::vector<FieldElement> coeffs(size);
  for (auto& c : coeffs) {
    c.value = r.u32();
    if (c.value >= q) r.fail("coefficient out of range");
  }
  return MPoly(MonomialBasis::make(k, d), std::move(coeffs));
}

}  // namespace

std::vector<std::uint8_t> serialize(const ColouredBipartiteGraph& g) {
  Writer w;
  w.bytes(kMagic, 4);
  w.u32(kGraphFormatVersion);

  const GraphParams& p = g.params();
  w.u8(static_cast<std::uint8_t>(p.kind));
  w.u64(p.q);
  w.u32(p.k);
  w.u32(p.d);
  w.u32(p.D);
  w.u32(p.lambda);
  write_rational(w, p.t);
  write_rational(w, p.s);
  write_rational(w, p.p.value());
  w.u64(p.p.scale());
  w.u64(p.p.factorial_arg());
  w.u8(p.soundness_vacuous ? 1 : 0);

  w.u32(static_cast<std::uint32_t>(g.num_classes()));
  for (auto s : g.class_sizes()) w.u64(s);
  w.u64(g.b_size());
  w.u64(g.words_per_row());
  for (std::size_t v = 0; v < g.num_left(); ++v)
    for (auto word : g.row(v).words()) w.u64(word);

  const auto& labels = g.labels();
  w.u8(labels ? 1 : 0);
  if (labels) {
    w.u32(labels->q);
    w.u32(labels->k_vars);
    for (const auto* list : {&labels->vertex_polys, &labels->class_shifts, &labels->vertex_offsets}) {
      w.u64(list->size());
      for (const auto& f : *list) write_poly(w, labels->q, f);
    }
  }
  return w.take();
}

ColouredBipartiteGraph deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.need(4, "magic");
  for (int i = 0; i < 4; ++i) {
    if (r.u8() != static_cast<std::uint8_t>(kMagic[i])) throw MalformedInput("bad magic", 0);
  }
  if (const auto version = r.u32(); version != kGraphFormatVersion) {
    throw MalformedInput("unsupported graph format version " + std::to_string(version), 4);
  }

  GraphParams p;
  {
    const std::size_t at = r.offset();
    const std::uint8_t kind = r.u8();
    if (kind > 2) throw MalformedInput("unknown graph kind", at);
    p.kind = static_cast<GraphKind>(kind);
  }
  p.q = r.u64();
  p.k = r.u32();
  p.d = r.u32();
  p.D = r.u32();
  p.lambda = r.u32();
  p.t = read_rational(r);
  p.s = read_rational(r);
  {
    const std::size_t at = r.offset();
    const Rational value = read_rational(r);
    const std::uint64_t scale = r.u64();
    const std::uint64_t fact = r.u64();
    if (fact != 0) {
      if (scale == 0) throw MalformedInput("symbolic probability without scale", at);
      p.p = ProbabilityTarget::inverse_factorial(scale, fact);
    } else {
      p.p = ProbabilityTarget::exact(value);
    }
  }
  {
    const std::uint8_t flag = r.u8();
    if (flag > 1) r.fail("bad vacuous flag");
    p.soundness_vacuous = flag == 1;
  }

  const std::uint32_t classes = r.u32();
  if (classes == 0) r.fail("graph has no left classes");
  r.need(static_cast<std::uint64_t>(classes) * 8, "class sizes");
  std::vector<std::size_t> sizes(classes);
  std::uint64_t total = 0;
  for (auto& s : sizes) {
    s = r.u64();
    total += s;
  }
  const std::uint64_t b_size = r.u64();
  const std::size_t words_at = r.offset();
  const std::uint64_t wpr = r.u64();
  if (wpr != Bitset::word_count_for(b_size)) throw MalformedInput("words per row does not match b_size", words_at);
  auto row_words = checked_mul(total, wpr);
  if (!row_words || *row_words > (bytes.size() - r.offset()) / 8) {
    throw MalformedInput("truncated adjacency rows", r.offset());
  }

  ColouredBipartiteGraph g(std::move(sizes), b_size);
  const std::size_t tail = b_size % Bitset::kWordBits;
  for (std::size_t v = 0; v < g.num_left(); ++v) {
    auto words = g.row(v).words();
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::size_t at = r.offset();
      words[i] = r.u64();
      if (i + 1 == words.size() && tail != 0 && (words[i] >> tail) != 0) {
        throw MalformedInput("adjacency bits beyond b_size", at);
      }
    }
  }
  g.set_params(p);

  const std::uint8_t has_labels = r.u8();
  if (has_labels > 1) r.fail("bad label flag");
  if (has_labels) {
    GraphLabels labels;
    labels.q = r.u32();
    labels.k_vars = r.u32();
    for (auto* list : {&labels.vertex_polys, &labels.class_shifts, &labels.vertex_offsets}) {
      const std::uint64_t count = r.u64();
      if (count > bytes.size()) r.fail("polynomial count exceeds input size");
      list->reserve(count);
      for (std::uint64_t i = 0; i < count; ++i) list->push_back(read_poly(r, labels.q));
    }
    g.set_labels(std::move(labels));
  }
  if (!r.at_end()) r.fail("trailing bytes after graph");
  return g;
}

void write_graph(const std::filesystem::path& path, const ColouredBipartiteGraph& g) {
  const auto bytes = serialize(g);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

ColouredBipartiteGraph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace extremal
