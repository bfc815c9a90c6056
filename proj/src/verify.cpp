#include "extremal/verify.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "extremal/rng.hpp"

namespace extremal {

const char* to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::exhaustive:
      return "exhaustive";
    case VerifyMode::montecarlo:
      return "montecarlo";
    case VerifyMode::automatic:
      break;
  }
  return "automatic";
}

VerifyMode parse_verify_mode(const std::string& text) {
  if (text == "exhaustive") return VerifyMode::exhaustive;
  if (text == "montecarlo" || text == "mc") return VerifyMode::montecarlo;
  if (text == "automatic" || text == "auto") return VerifyMode::automatic;
  throw InvalidArgument("unknown verify mode: " + text);
}

bool VerificationReport::fraction_passed() const {
  if (kind != GraphKind::panchromatic) return true;
  return p.met_by(exact_t_count, complete_checked);
}

bool VerificationReport::passed(bool include_fraction) const {
  return completeness_passed() && soundness_passed() && (!include_fraction || fraction_passed());
}

Rational VerificationReport::frac_exact_t() const {
  if (complete_checked == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(exact_t_count), static_cast<std::int64_t>(complete_checked));
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  const auto b = [](bool v) { return v ? "true" : "false"; };
  os << "kind=" << to_string(kind) << '\n'
     << "mode=" << to_string(mode) << '\n'
     << "k=" << k << '\n'
     << "num_left=" << num_left << '\n'
     << "b_size=" << b_size << '\n'
     << "t=" << t << '\n'
     << "s=" << s << '\n';
  if (kind == GraphKind::panchromatic) os << "p=" << p.str() << '\n';
  os << "soundness_vacuous=" << b(soundness_vacuous) << '\n';
  if (mode == VerifyMode::montecarlo) os << "seed=" << seed << '\n';
  os << "tuples_checked=" << tuples_checked() << '\n'
     << "complete_population=" << complete_population << '\n'
     << "complete_checked=" << complete_checked << '\n'
     << "min_complete=" << min_complete << '\n'
     << "max_complete=" << max_complete << '\n'
     << "complete_violations=" << complete_violations << '\n';
  if (kind == GraphKind::panchromatic) {
    const Interval ci = frac_interval();
    os << "max_pan=" << max_complete << '\n'
       << "exact_t_count=" << exact_t_count << '\n'
       << "frac_exact_t=" << frac_exact_t() << '\n'
       << "frac_exact_t_ci_low=" << ci.lo << '\n'
       << "frac_exact_t_ci_high=" << ci.hi << '\n';
  }
  os << "sound_population=" << sound_population << '\n'
     << "sound_checked=" << sound_checked << '\n'
     << "max_sound=" << max_sound << '\n'
     << "sound_violations=" << sound_violations << '\n'
     << "completeness_passed=" << b(completeness_passed()) << '\n';
  if (kind == GraphKind::panchromatic) os << "fraction_passed=" << b(fraction_passed()) << '\n';
  os << "soundness_passed=" << b(soundness_passed()) << '\n' << "passed=" << b(passed()) << '\n';
  if (mode == VerifyMode::montecarlo) os << "confidence=sampled\n";
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const auto& w = witnesses[i];
    os << "witness." << i << '=' << w.clause << ':';
    for (std::size_t j = 0; j < w.vertices.size(); ++j) os << (j ? "," : "") << w.vertices[j];
    os << ":size=" << w.size << '\n';
  }
  return os.str();
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kChunk = 1024;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  return checked_binomial(n, k).value_or(kSaturated);
}

std::uint64_t sat_product(std::span<const std::size_t> sizes) {
  std::uint64_t acc = 1;
  for (auto s : sizes) {
    if (s == 0) return 0;
    auto next = checked_mul(acc, s);
    if (!next) return kSaturated;
    acc = *next;
  }
  return acc;
}

/// Per-thread statistics; merges are order independent.
struct Stats {
  std::uint64_t complete_checked = 0;
  std::uint64_t min_complete = kSaturated;
  std::uint64_t max_complete = 0;
  std::uint64_t complete_violations = 0;
  std::uint64_t exact_t = 0;
  std::uint64_t sound_checked = 0;
  std::uint64_t max_sound = 0;
  std::uint64_t sound_violations = 0;

  void merge(const Stats& o) {
    complete_checked += o.complete_checked;
    min_complete = std::min(min_complete, o.min_complete);
    max_complete = std::max(max_complete, o.max_complete);
    complete_violations += o.complete_violations;
    exact_t += o.exact_t;
    sound_checked += o.sound_checked;
    max_sound = std::max(max_sound, o.max_sound);
    sound_violations += o.sound_violations;
  }
};

/// Clause predicates for one graph kind.
struct Clauses {
  GraphKind kind;
  Rational t;
  Rational s;

  bool complete_violated(std::uint64_t size) const {
    return kind == GraphKind::panchromatic ? !at_most(size, t) : !at_least(size, t);
  }
  bool exactly_t(std::uint64_t size) const {
    return static_cast<__int128>(size) * t.den() == static_cast<__int128>(t.num());
  }
  bool sound_violated(std::uint64_t size) const { return !at_most(size, s); }
};

/// Witnesses of one unit of work, kept in enumeration order.
struct WitnessSink {
  std::size_t cap = 0;
  std::vector<Witness> complete;
  std::vector<Witness> sound;

  void add(bool is_complete, std::span<const std::size_t> tuple, std::uint64_t size) {
    auto& list = is_complete ? complete : sound;
    if (list.size() >= cap) return;
    std::vector<std::size_t> v(tuple.begin(), tuple.end());
    std::sort(v.begin(), v.end());
    list.push_back({is_complete ? "completeness" : "soundness", std::move(v), size});
  }
};

/// Concatenates per-item witnesses in item order and keeps the first cap of
/// each clause.
std::vector<Witness> collect_witnesses(const std::vector<WitnessSink>& sinks, std::size_t cap) {
  std::vector<Witness> complete;
  std::vector<Witness> sound;
  for (const auto& s : sinks) {
    for (const auto& w : s.complete)
      if (complete.size() < cap) complete.push_back(w);
    for (const auto& w : s.sound)
      if (sound.size() < cap) sound.push_back(w);
  }
  complete.insert(complete.end(), sound.begin(), sound.end());
  return complete;
}

/// The cap lexicographically smallest witnesses of each clause. Every sink
/// holds the smallest ones of its own item, so their union suffices.
std::vector<Witness> smallest_witnesses(const std::vector<WitnessSink>& sinks, std::size_t cap) {
  std::vector<Witness> complete;
  std::vector<Witness> sound;
  for (const auto& s : sinks) {
    complete.insert(complete.end(), s.complete.begin(), s.complete.end());
    sound.insert(sound.end(), s.sound.begin(), s.sound.end());
  }
  auto by_vertices = [](const Witness& a, const Witness& b) { return a.vertices < b.vertices; };
  for (auto* list : {&complete, &sound}) {
    std::sort(list->begin(), list->end(), by_vertices);
    if (list->size() > cap) list->resize(cap);
  }
  complete.insert(complete.end(), sound.begin(), sound.end());
  return complete;
}

struct Recorder {
  const Clauses& clauses;
  Stats& stats;
  WitnessSink& sink;

  void complete(std::span<const std::size_t> tuple, std::uint64_t size) {
    ++stats.complete_checked;
    stats.min_complete = std::min(stats.min_complete, size);
    stats.max_complete = std::max(stats.max_complete, size);
    if (clauses.kind == GraphKind::panchromatic && clauses.exactly_t(size)) ++stats.exact_t;
    if (clauses.complete_violated(size)) {
      ++stats.complete_violations;
      sink.add(true, tuple, size);
    }
  }
  void sound(std::span<const std::size_t> tuple, std::uint64_t size) {
    ++stats.sound_checked;
    stats.max_sound = std::max(stats.max_sound, size);
    if (clauses.sound_violated(size)) {
      ++stats.sound_violations;
      sink.add(false, tuple, size);
    }
  }
};

void finish(VerificationReport& r, const Stats& st) {
  r.complete_checked = st.complete_checked;
  r.min_complete = st.complete_checked ? st.min_complete : 0;
  r.max_complete = st.max_complete;
  r.complete_violations = st.complete_violations;
  r.exact_t_count = st.exact_t;
  r.sound_checked = st.sound_checked;
  r.max_sound = st.max_sound;
  r.sound_violations = st.sound_violations;
}

/// Floyd's algorithm: uniform k-subset of [0, n), ascending.
void sample_subset(Rng& rng, std::size_t n, std::size_t k, std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::size_t>(rng.uniform_below(j + 1));
    if (std::find(out.begin(), out.end(), t) == out.end()) {
      out.push_back(t);
    } else {
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
}

std::uint64_t tuple_neighbourhood(const ColouredBipartiteGraph& g, std::span<const std::size_t> tuple,
                                  std::vector<Bitset::Word>& scratch) {
  const std::size_t words = g.words_per_row();
  scratch.assign(words, ~Bitset::Word{0});
  std::span<Bitset::Word> acc(scratch);
  std::uint64_t size = 0;
  for (auto v : tuple) size = and_into(acc, acc, g.row(v).words());
  return tuple.empty() ? g.b_size() : size;
}

/// Resolves automatic mode against the budget.
VerifyMode resolve_mode(VerifyMode requested, std::uint64_t required, std::uint64_t budget) {
  const bool fits = required != kSaturated && required <= budget;
  if (requested == VerifyMode::exhaustive && !fits) {
    throw BudgetExceeded("exhaustive verification", required, budget);
  }
  if (requested == VerifyMode::automatic) return fits ? VerifyMode::exhaustive : VerifyMode::montecarlo;
  return requested;
}

// ---------------------------------------------------------------------------
// Threshold

void threshold_exhaustive(const ColouredBipartiteGraph& g, unsigned k, const Clauses& clauses,
                          VerificationReport& report, std::size_t cap) {
  const std::size_t n = g.num_left();
  const std::size_t words = g.words_per_row();
  std::vector<WitnessSink> sinks(n, WitnessSink{cap, {}, {}});
  Stats total;

  if (n >= k) {
#pragma omp parallel
    {
      Stats local;
      std::vector<Bitset::Word> prefix(static_cast<std::size_t>(k) * words);
      std::vector<std::size_t> chosen(k + 1);

#pragma omp for schedule(dynamic, 1) nowait
      for (std::int64_t first = 0; first < static_cast<std::int64_t>(n); ++first) {
        Recorder rec{clauses, local, sinks[static_cast<std::size_t>(first)]};
        chosen[0] = static_cast<std::size_t>(first);
        auto level = [&](std::size_t d) { return std::span<Bitset::Word>(prefix.data() + d * words, words); };
        auto src = g.row(chosen[0]).words();
        std::copy(src.begin(), src.end(), level(0).begin());

        // depth = number of chosen vertices; level(depth - 1) holds their N.
        auto dfs = [&](auto&& self, std::size_t depth) -> void {
          const std::size_t last = chosen[depth - 1];
          if (depth == k) {
            const auto cur = level(depth - 1);
            std::uint64_t size = 0;
            for (auto w : cur) size += static_cast<std::uint64_t>(std::popcount(w));
            rec.complete(std::span(chosen.data(), k), size);
            for (std::size_t j = last + 1; j < n; ++j) {
              chosen[k] = j;
              rec.sound(std::span(chosen.data(), k + 1), and_count(cur, g.row(j).words()));
            }
            return;
          }
          for (std::size_t j = last + 1; j + (k - depth) <= n; ++j) {
            chosen[depth] = j;
            and_into(level(depth), level(depth - 1), g.row(j).words());
            self(self, depth + 1);
          }
        };
        dfs(dfs, 1);
      }
#pragma omp critical
      total.merge(local);
    }
  }
  finish(report, total);
  report.witnesses = smallest_witnesses(sinks, cap);
}

void threshold_montecarlo(const ColouredBipartiteGraph& g, unsigned k, const Clauses& clauses,
                          VerificationReport& report, const VerifyOptions& options) {
  const std::size_t n = g.num_left();
  const std::uint64_t samples = options.samples;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  // Two clauses, each split into chunks with their own substreams.
  std::vector<WitnessSink> sinks(2 * chunks, WitnessSink{options.max_witnesses, {}, {}});
  Stats total;

#pragma omp parallel
  {
    Stats local;
    std::vector<std::size_t> tuple;
    std::vector<Bitset::Word> scratch;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t item = 0; item < static_cast<std::int64_t>(2 * chunks); ++item) {
      const bool complete = item < static_cast<std::int64_t>(chunks);
      const std::uint64_t chunk = complete ? static_cast<std::uint64_t>(item) : static_cast<std::uint64_t>(item) - chunks;
      const std::size_t size = complete ? k : k + 1;
      if (size > n) continue;
      Rng rng(derive_seed(options.seed, complete ? "verify.complete" : "verify.sound", chunk));
      Recorder rec{clauses, local, sinks[static_cast<std::size_t>(item)]};
      const std::uint64_t count = std::min(kChunk, samples - chunk * kChunk);
      for (std::uint64_t i = 0; i < count; ++i) {
        sample_subset(rng, n, size, tuple);
        const auto z = tuple_neighbourhood(g, tuple, scratch);
        complete ? rec.complete(tuple, z) : rec.sound(tuple, z);
      }
    }
#pragma omp critical
    total.merge(local);
  }
  finish(report, total);
  report.witnesses = collect_witnesses(sinks, options.max_witnesses);
}

// ---------------------------------------------------------------------------
// Panchromatic

/// Nondecreasing colour sequences of length k over [0, classes) with a
/// repeated colour and enough vertices in every class.
std::vector<std::vector<std::size_t>> repeated_signatures(std::span<const std::size_t> sizes, unsigned k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> sig(k, 0);
  const std::size_t classes = sizes.size();
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
    if (pos == k) {
      bool repeat = false;
      for (std::size_t i = 1; i < k; ++i) repeat = repeat || sig[i] == sig[i - 1];
      if (!repeat) return;
      for (std::size_t i = 0, run = 1; i < k; ++i, ++run) {
        if (i > 0 && sig[i] != sig[i - 1]) run = 1;
        if (run > sizes[sig[i]]) return;
      }
      out.push_back(sig);
      return;
    }
    for (std::size_t c = from; c < classes; ++c) {
      sig[pos] = c;
      self(self, pos + 1, c);
    }
  };
  rec(rec, 0, 0);
  return out;
}

void panchromatic_exhaustive(const ColouredBipartiteGraph& g, const Clauses& clauses, VerificationReport& report,
                             std::size_t cap) {
  const unsigned k = static_cast<unsigned>(g.num_classes());
  const std::size_t words = g.words_per_row();
  const auto sizes = g.class_sizes();
  const auto sigs = repeated_signatures(sizes, k);

  // Work items: one per vertex of class 0 for the product, then one per
  // (signature, first member) for the repeated-colour subsets.
  struct Item {
    std::size_t sig;  // index into sigs, or npos for the product
    std::size_t first_local;
  };
  constexpr std::size_t kProduct = static_cast<std::size_t>(-1);
  std::vector<Item> items;
  for (std::size_t v = 0; v < sizes[0]; ++v) items.push_back({kProduct, v});
  for (std::size_t si = 0; si < sigs.size(); ++si)
    for (std::size_t v = 0; v < sizes[sigs[si][0]]; ++v) items.push_back({si, v});

  std::vector<WitnessSink> sinks(items.size(), WitnessSink{cap, {}, {}});
  Stats total;

#pragma omp parallel
  {
    Stats local;
    std::vector<Bitset::Word> prefix(static_cast<std::size_t>(k) * words);
    std::vector<std::size_t> chosen(k);
    std::vector<std::size_t> locals(k);
    auto level = [&](std::size_t d) { return std::span<Bitset::Word>(prefix.data() + d * words, words); };

#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t it = 0; it < static_cast<std::int64_t>(items.size()); ++it) {
      const Item item = items[static_cast<std::size_t>(it)];
      Recorder rec{clauses, local, sinks[static_cast<std::size_t>(it)]};
      const bool product = item.sig == kProduct;
      auto colour = [&](std::size_t pos) { return product ? pos : sigs[item.sig][pos]; };

      locals[0] = item.first_local;
      chosen[0] = g.global_index(colour(0), item.first_local);
      auto src = g.row(chosen[0]).words();
      std::copy(src.begin(), src.end(), level(0).begin());

      auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (depth == k) {
          std::uint64_t size = 0;
          for (auto w : level(k - 1)) size += static_cast<std::uint64_t>(std::popcount(w));
          product ? rec.complete(chosen, size) : rec.sound(chosen, size);
          return;
        }
        const std::size_t c = colour(depth);
        const std::size_t start = (!product && c == colour(depth - 1)) ? locals[depth - 1] + 1 : 0;
        for (std::size_t j = start; j < sizes[c]; ++j) {
          locals[depth] = j;
          chosen[depth] = g.global_index(c, j);
          and_into(level(depth), level(depth - 1), g.row(chosen[depth]).words());
          self(self, depth + 1);
        }
      };
      dfs(dfs, 1);
    }
#pragma omp critical
    total.merge(local);
  }
  finish(report, total);
  report.witnesses = smallest_witnesses(sinks, cap);
}

void panchromatic_montecarlo(const ColouredBipartiteGraph& g, const Clauses& clauses, VerificationReport& report,
                             const VerifyOptions& options) {
  const std::size_t k = g.num_classes();
  const std::size_t n_left = g.num_left();
  const std::uint64_t samples = options.samples;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  const bool any_repeated = report.sound_population > 0;
  std::vector<WitnessSink> sinks(2 * chunks, WitnessSink{options.max_witnesses, {}, {}});
  Stats total;

#pragma omp parallel
  {
    Stats local;
    std::vector<std::size_t> tuple(k);
    std::vector<Bitset::Word> scratch;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t item = 0; item < static_cast<std::int64_t>(2 * chunks); ++item) {
      const bool complete = item < static_cast<std::int64_t>(chunks);
      const std::uint64_t chunk = complete ? static_cast<std::uint64_t>(item) : static_cast<std::uint64_t>(item) - chunks;
      if (!complete && !any_repeated) continue;
      Rng rng(derive_seed(options.seed, complete ? "verify.pan" : "verify.repeat", chunk));
      Recorder rec{clauses, local, sinks[static_cast<std::size_t>(item)]};
      const std::uint64_t count = std::min(kChunk, samples - chunk * kChunk);
      for (std::uint64_t i = 0; i < count; ++i) {
        if (complete) {
          tuple.resize(k);
          for (std::size_t c = 0; c < k; ++c)
            tuple[c] = g.global_index(c, static_cast<std::size_t>(rng.uniform_below(g.class_size(c))));
          rec.complete(tuple, tuple_neighbourhood(g, tuple, scratch));
        } else {
          // Uniform over repeated-colour subsets by rejecting transversals.
          bool repeated = false;
          while (!repeated) {
            sample_subset(rng, n_left, k, tuple);
            for (std::size_t j = 1; j < k && !repeated; ++j) repeated = g.class_of(tuple[j]) == g.class_of(tuple[j - 1]);
          }
          rec.sound(tuple, tuple_neighbourhood(g, tuple, scratch));
        }
      }
    }
#pragma omp critical
    total.merge(local);
  }
  finish(report, total);
  report.witnesses = collect_witnesses(sinks, options.max_witnesses);
}

VerificationReport report_header(const ColouredBipartiteGraph& g, GraphKind kind, unsigned k) {
  VerificationReport r;
  const GraphParams& p = g.params();
  r.kind = kind;
  r.k = k;
  r.num_left = g.num_left();
  r.b_size = g.b_size();
  r.t = p.t;
  r.s = p.s;
  r.p = p.p;
  r.soundness_vacuous = at_most(g.b_size(), p.s);
  return r;
}

}  // namespace

std::uint64_t repeated_colour_count(std::span<const std::size_t> class_sizes, unsigned k) {
  std::uint64_t total = 0;
  for (auto s : class_sizes) total += s;
  const std::uint64_t all = sat_binomial(total, k);
  if (all == kSaturated) return kSaturated;
  const std::uint64_t transversal = class_sizes.size() == k ? sat_product(class_sizes) : 0;
  return all - std::min(all, transversal);
}

VerificationReport verify_threshold(const ColouredBipartiteGraph& g, const VerifyOptions& options,
                                    unsigned k_override) {
  const unsigned k = k_override ? k_override : g.params().k;
  if (k == 0) throw InvalidArgument("threshold verification needs k >= 1");
  VerificationReport report = report_header(g, GraphKind::threshold, k);
  const Clauses clauses{GraphKind::threshold, g.params().t, g.params().s};

  const std::size_t n = g.num_left();
  report.complete_population = sat_binomial(n, k);
  report.sound_population = sat_binomial(n, k + 1);
  report.mode = resolve_mode(options.mode, sat_add(report.complete_population, report.sound_population),
                             options.budget);
  if (report.mode == VerifyMode::exhaustive) {
    threshold_exhaustive(g, k, clauses, report, options.max_witnesses);
  } else {
    report.seed = options.seed;
    threshold_montecarlo(g, k, clauses, report, options);
  }
  return report;
}

VerificationReport verify_panchromatic(const ColouredBipartiteGraph& g, const VerifyOptions& options) {
  const auto k = static_cast<unsigned>(g.num_classes());
  if (k < 2) throw InvalidArgument("panchromatic verification needs at least 2 classes");
  for (auto s : g.class_sizes())
    if (s == 0) throw InvalidArgument("panchromatic verification needs nonempty classes");
  VerificationReport report = report_header(g, GraphKind::panchromatic, k);
  const Clauses clauses{GraphKind::panchromatic, g.params().t, g.params().s};

  report.complete_population = sat_product(g.class_sizes());
  report.sound_population = repeated_colour_count(g.class_sizes(), k);
  report.mode = resolve_mode(options.mode, sat_add(report.complete_population, report.sound_population),
                             options.budget);
  if (report.mode == VerifyMode::exhaustive) {
    panchromatic_exhaustive(g, clauses, report, options.max_witnesses);
  } else {
    report.seed = options.seed;
    panchromatic_montecarlo(g, clauses, report, options);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Zero-set statistics

std::uint64_t ZHistogram::count_equal(std::uint64_t z) const {
  auto it = counts.find(z);
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t ZHistogram::count_greater(std::uint64_t z) const {
  std::uint64_t c = 0;
  for (auto it = counts.upper_bound(z); it != counts.end(); ++it) c += it->second;
  return c;
}

Rational ZHistogram::prob_equal(std::uint64_t z) const {
  return Rational(static_cast<std::int64_t>(count_equal(z)), static_cast<std::int64_t>(trials));
}

Rational ZHistogram::prob_greater(std::uint64_t z) const {
  return Rational(static_cast<std::int64_t>(count_greater(z)), static_cast<std::int64_t>(trials));
}

double ZHistogram::mean() const {
  if (trials == 0) return 0.0;
  long double acc = 0;
  for (const auto& [z, c] : counts) acc += static_cast<long double>(z) * static_cast<long double>(c);
  return static_cast<double>(acc / static_cast<long double>(trials));
}

std::string ZHistogram::to_text() const {
  std::ostringstream os;
  os << "k=" << k << '\n' << "degrees=";
  for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
  os << '\n' << "q=" << q << '\n' << "exact=" << (exact ? "true" : "false") << '\n';
  if (!exact) os << "seed=" << seed << '\n';
  os << "trials=" << trials << '\n' << "mean=" << mean() << '\n' << "counts={";
  bool first = true;
  for (const auto& [z, c] : counts) {
    os << (first ? "" : ", ") << z << ':' << c;
    first = false;
  }
  os << "}\n";
  for (const auto& [z, c] : counts) os << "count." << z << '=' << c << '\n';
  return os.str();
}

namespace {

void check_degrees(unsigned k, std::span<const unsigned> degrees) {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (degrees.empty() || degrees.size() > k) throw InvalidArgument("need between 1 and k degrees");
}

/// Coefficients of the index-th polynomial in coefficient-lexicographic order.
void unrank_coeffs(std::uint64_t index, std::uint32_t q, std::span<FieldElement> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i].value = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
}

/// Odometer step in coefficient-lexicographic order.
void advance_coeffs(std::uint32_t q, std::span<FieldElement> c) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (++c[i].value < q) return;
    c[i].value = 0;
  }
}

/// Zero sets of every polynomial of one basis, grouped by equal zero set.
std::map<std::vector<Bitset::Word>, std::uint64_t> zero_set_classes(const FieldSpec& field, unsigned k, unsigned d,
                                                                    std::uint64_t budget) {
  const auto basis = MonomialBasis::make(k, d);
  const PointTable table(field, basis, budget);
  const std::uint32_t q = field.order();
  const std::size_t r = basis->size();
  const std::uint64_t space = ipow(q, static_cast<unsigned>(r));
  const std::size_t points = table.num_points();
  const std::size_t words = Bitset::word_count_for(points);
  const std::uint64_t chunks = (space + kChunk - 1) / kChunk;

  std::map<std::vector<Bitset::Word>, std::uint64_t> classes;
#pragma omp parallel
  {
    std::map<std::vector<Bitset::Word>, std::uint64_t> local;
    std::vector<FieldElement> coeffs(r);
    std::vector<Bitset::Word> bits(words);
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t end = std::min(space, begin + kChunk);
      unrank_coeffs(begin, q, coeffs);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        std::fill(bits.begin(), bits.end(), 0);
        for (std::size_t x = 0; x < points; ++x)
          if (field.dot(coeffs, table.row(x)).value == 0) bits[x / Bitset::kWordBits] |= Bitset::Word{1} << (x % Bitset::kWordBits);
        ++local[bits];
        advance_coeffs(q, coeffs);
      }
    }
#pragma omp critical
    for (const auto& [key, count] : local) classes[key] += count;
  }
  return classes;
}

}  // namespace

ZHistogram bezout_exact(unsigned k, std::span<const unsigned> degrees, std::uint64_t q, std::uint64_t budget) {
  check_degrees(k, degrees);
  const FieldSpec field(q);
  const std::uint64_t points = point_count(field, k, budget);

  std::uint64_t total = 1;
  for (auto d : degrees) {
    const std::uint64_t r = monomial_count(k, d);
    auto space = r > 64 ? std::nullopt : checked_pow(q, static_cast<unsigned>(r));
    auto next = space ? checked_mul(total, *space) : std::nullopt;
    if (!next || *next > budget) throw BudgetExceeded("exact Bezout enumeration", next.value_or(kSaturated), budget);
    total = *next;
  }

  ZHistogram h;
  h.k = k;
  h.degrees.assign(degrees.begin(), degrees.end());
  h.q = q;
  h.exact = true;
  h.trials = total;

  std::vector<std::vector<std::pair<std::vector<Bitset::Word>, std::uint64_t>>> spaces;
  for (auto d : degrees) {
    auto m = zero_set_classes(field, k, d, budget);
    spaces.emplace_back(m.begin(), m.end());
  }

  const std::size_t words = Bitset::word_count_for(points);
  std::vector<Bitset::Word> acc(words * degrees.size());
  auto rec = [&](auto&& self, std::size_t depth, std::uint64_t weight) -> void {
    if (depth == spaces.size()) {
      std::uint64_t z = 0;
      for (std::size_t i = 0; i < words; ++i) z += static_cast<std::uint64_t>(std::popcount(acc[(depth - 1) * words + i]));
      h.counts[z] += weight;
      return;
    }
    for (const auto& [bits, count] : spaces[depth]) {
      std::span<Bitset::Word> dst(acc.data() + depth * words, words);
      if (depth == 0) {
        std::copy(bits.begin(), bits.end(), dst.begin());
      } else {
        and_into(dst, std::span<const Bitset::Word>(acc.data() + (depth - 1) * words, words), bits);
      }
      self(self, depth + 1, weight * count);
    }
  };
  rec(rec, 0, 1);
  return h;
}

ZHistogram bezout_trials(unsigned k, std::span<const unsigned> degrees, std::uint64_t q, std::uint64_t trials,
                         std::uint64_t seed, std::uint64_t budget) {
  check_degrees(k, degrees);
  const FieldSpec field(q);
  const unsigned top = *std::max_element(degrees.begin(), degrees.end());
  const auto basis = MonomialBasis::make(k, top);
  const PointTable table(field, basis, budget);
  const std::size_t points = table.num_points();

  std::vector<std::shared_ptr<const MonomialBasis>> bases;
  for (auto d : degrees) bases.push_back(MonomialBasis::make(k, d));

  ZHistogram h;
  h.k = k;
  h.degrees.assign(degrees.begin(), degrees.end());
  h.q = q;
  h.trials = trials;
  h.seed = seed;

  constexpr std::uint64_t kTrialChunk = 256;
  const std::uint64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
#pragma omp parallel
  {
    std::map<std::uint64_t, std::uint64_t> local;
    std::vector<MPoly> system;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      Rng rng(derive_seed(seed, "bezout", static_cast<std::uint64_t>(c)));
      const std::uint64_t count = std::min(kTrialChunk, trials - static_cast<std::uint64_t>(c) * kTrialChunk);
      for (std::uint64_t i = 0; i < count; ++i) {
        system.clear();
        for (const auto& b : bases) system.push_back(sample_mpoly(b, field, rng));
        std::uint64_t z = 0;
        for (std::size_t x = 0; x < points; ++x) {
          const auto row = table.row(x);
          bool all = true;
          for (const auto& f : system) {
            if (field.dot(f.coeffs(), row.first(f.coeffs().size())).value != 0) {
              all = false;
              break;
            }
          }
          z += all ? 1 : 0;
        }
        ++local[z];
      }
    }
#pragma omp critical
    for (const auto& [z, n] : local) h.counts[z] += n;
  }
  return h;
}

VanishResult vanish_probability_exact(unsigned k, unsigned d, std::uint64_t q, std::span<const Point> points,
                                      std::uint64_t budget) {
  if (k == 0) throw InvalidArgument("k must be positive");
  const FieldSpec field(q);
  for (const auto& x : points) {
    if (x.size() != k) throw InvalidArgument("point has the wrong number of coordinates");
    for (auto c : x)
      if (c.value >= q) throw InvalidArgument("point coordinate outside the field");
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw DuplicatePoints();

  const auto basis = MonomialBasis::make(k, d);
  const std::size_t r = basis->size();
  auto space = r > 64 ? std::nullopt : checked_pow(q, static_cast<unsigned>(r));
  if (!space || *space > budget) throw BudgetExceeded("vanishing-probability enumeration", space.value_or(kSaturated), budget);

  const std::size_t m = points.size();
  std::vector<FieldElement> values(m * r);
  for (std::size_t i = 0; i < m; ++i) basis->monomial_values(field, points[i], std::span(values.data() + i * r, r));

  const std::uint32_t qq = field.order();
  const std::uint64_t chunks = (*space + kChunk - 1) / kChunk;
  std::uint64_t vanishing = 0;
#pragma omp parallel reduction(+ : vanishing)
  {
    std::vector<FieldElement> coeffs(r);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t end = std::min(*space, begin + kChunk);
      unrank_coeffs(begin, qq, coeffs);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        bool all = true;
        for (std::size_t i = 0; i < m && all; ++i) all = field.dot(coeffs, std::span(values.data() + i * r, r)).value == 0;
        vanishing += all ? 1 : 0;
        advance_coeffs(qq, coeffs);
      }
    }
  }

  VanishResult out;
  out.vanishing = vanishing;
  out.total = *space;
  out.probability = Rational(static_cast<std::int64_t>(vanishing), static_cast<std::int64_t>(*space));
  const std::uint64_t pairs = m < 2 ? 0 : m * (m - 1) / 2;
  out.hypotheses_hold = q > pairs && static_cast<std::uint64_t>(d) + 1 >= m;
  return out;
}

}  // namespace extremal
