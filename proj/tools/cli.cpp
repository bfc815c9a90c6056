#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "extremal/bigraph.hpp"
#include "extremal/construct.hpp"
#include "extremal/reduce.hpp"
#include "extremal/setsys.hpp"
#include "extremal/verify.hpp"
#include "extremal/version.hpp"

namespace extremal::cli {

namespace {

struct Common {
  std::uint64_t budget = kDefaultBudget;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string report;
};

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--budget", c.budget, "Cap on elementary operations for exhaustive work")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0 = runtime default)");
  sub->add_option("--report", c.report, "Also write the report to this path");
  if (with_seed) sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
}

/// Restores the OpenMP thread count on scope exit.
class ThreadScope {
 public:
  explicit ThreadScope(int threads) : saved_(omp_get_max_threads()) {
    if (threads > 0) omp_set_num_threads(threads);
  }
  ~ThreadScope() { omp_set_num_threads(saved_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int saved_;
};

std::string header(const std::string& command, const Common& c) {
  std::ostringstream os;
  os << "tool=extremal\n"
     << "version=" << kVersion << '\n'
     << "schema=" << kReportSchema << '\n'
     << "command=" << command << '\n'
     << "seed=" << c.seed << '\n'
     << "budget=" << c.budget << '\n';
  return os.str();
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  out << text;
  if (!c.report.empty()) write_text_file(c.report, text);
}

std::string params_text(const GraphParams& p) {
  std::ostringstream os;
  os << "graph_kind=" << to_string(p.kind) << '\n'
     << "q=" << p.q << '\n'
     << "k=" << p.k << '\n'
     << "d=" << p.d << '\n';
  if (p.kind == GraphKind::panchromatic) os << "D=" << p.D << '\n' << "lambda=" << p.lambda << '\n';
  os << "t=" << p.t << '\n' << "s=" << p.s << '\n';
  if (p.kind == GraphKind::panchromatic) os << "p=" << p.p.str() << '\n';
  os << "soundness_vacuous=" << (p.soundness_vacuous ? "true" : "false") << '\n';
  return os.str();
}

std::string graph_text(const ColouredBipartiteGraph& g) {
  std::ostringstream os;
  std::uint64_t edges = 0;
  for (std::size_t v = 0; v < g.num_left(); ++v) edges += g.degree(v);
  os << "classes=" << g.num_classes() << '\n'
     << "num_left=" << g.num_left() << '\n'
     << "b_size=" << g.b_size() << '\n'
     << "edges=" << edges << '\n';
  return os.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string instance_summary(const SetSystemInstance& inst) {
  std::ostringstream os;
  os << "universe=" << inst.universe_size << '\n'
     << "coloured=" << (inst.coloured ? 1 : 0) << '\n'
     << "k=" << inst.k << '\n'
     << "sets=" << inst.num_sets() << '\n'
     << "c=" << inst.c << '\n'
     << "s=" << inst.s << '\n';
  return os.str();
}

/// "1,2" is two points of F_q^1; "0:1,2:3" is two points of F_q^2.
std::vector<Point> parse_points(const std::string& text, unsigned k, const FieldSpec& field) {
  std::vector<Point> points;
  if (text.empty()) return points;
  std::stringstream all(text);
  for (std::string item; std::getline(all, item, ',');) {
    Point x;
    std::stringstream coords(item);
    for (std::string c; std::getline(coords, c, ':');) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(c, &used);
      } catch (const std::exception&) {
        throw InvalidArgument("bad point coordinate '" + c + "'");
      }
      if (used != c.size() || v >= field.order()) throw InvalidArgument("bad point coordinate '" + c + "'");
      x.push_back(FieldElement{static_cast<std::uint32_t>(v)});
    }
    if (x.size() != k) throw InvalidArgument("point '" + item + "' needs " + std::to_string(k) + " coordinates");
    points.push_back(std::move(x));
  }
  return points;
}

GraphKind kind_from(const std::string& text, const ColouredBipartiteGraph& g) {
  if (!text.empty()) return parse_graph_kind(text);
  if (g.params().kind != GraphKind::unspecified) return g.params().kind;
  return g.num_classes() >= 2 ? GraphKind::panchromatic : GraphKind::threshold;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random algebraic extremal graphs: generation, verification and gap compositions", "extremal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  std::function<int()> action;

  // gen-threshold / gen-panchromatic
  unsigned k = 1;
  unsigned lambda = 2;
  std::uint64_t q = 0;
  std::string out_path;
  std::size_t restrict_to = 0;
  {
    auto* sub = app.add_subcommand("gen-threshold", "Sample a threshold graph");
    add_common(sub, common, true);
    sub->add_option("--k", k, "Parameter k")->required();
    sub->add_option("--q", q, "Field order (prime power)")->required();
    sub->add_option("--out", out_path, "Output graph file")->required();
    sub->add_option("--n", restrict_to, "Keep a random subset of this many vertices");
    sub->callback([&] {
      action = [&] {
        Rng rng(derive_seed(common.seed, "sample", 0));
        ColouredBipartiteGraph g = sample_threshold(k, q, rng, common.budget);
        const std::uint64_t draws = rng.field_draws();
        if (restrict_to) {
          Rng r2(derive_seed(common.seed, "restrict", 0));
          g = restrict_graph(g, restrict_to, r2).graph;
        }
        write_graph(out_path, g);
        emit(header("gen-threshold", common) + params_text(g.params()) + graph_text(g) +
                 "field_draws=" + std::to_string(draws) + "\nout=" + out_path + "\n",
             common, out);
        return kOk;
      };
    });
  }
  {
    auto* sub = app.add_subcommand("gen-panchromatic", "Sample a panchromatic graph");
    add_common(sub, common, true);
    sub->add_option("--k", k, "Parameter k (number of classes)")->required();
    sub->add_option("--lambda", lambda, "Degree ratio lambda > 1")->capture_default_str();
    sub->add_option("--q", q, "Field order (prime power)")->required();
    sub->add_option("--out", out_path, "Output graph file")->required();
    sub->add_option("--n", restrict_to, "Keep a random subset of this many vertices per class");
    sub->callback([&] {
      action = [&] {
        Rng rng(derive_seed(common.seed, "sample", 0));
        ColouredBipartiteGraph g = sample_panchromatic(k, lambda, q, rng, common.budget);
        const std::uint64_t draws = rng.field_draws();
        if (restrict_to) {
          Rng r2(derive_seed(common.seed, "restrict", 0));
          g = restrict_graph(g, restrict_to, r2).graph;
        }
        write_graph(out_path, g);
        emit(header("gen-panchromatic", common) + params_text(g.params()) + graph_text(g) +
                 "field_draws=" + std::to_string(draws) + "\nout=" + out_path + "\n",
             common, out);
        return kOk;
      };
    });
  }

  // verify
  std::string graph_path;
  std::string kind_text;
  std::string mode_text = "auto";
  std::uint64_t samples = 10'000;
  unsigned k_override = 0;
  std::size_t max_witnesses = 8;
  bool gate = false;
  bool require_fraction = false;
  {
    auto* sub = app.add_subcommand("verify", "Check the defining clauses of a graph");
    add_common(sub, common, true);
    sub->add_option("--graph", graph_path, "Graph file")->required();
    sub->add_option("--kind", kind_text, "threshold or panchromatic (default: from the graph)");
    sub->add_option("--mode", mode_text, "exhaustive, mc or auto")->capture_default_str();
    sub->add_option("--samples", samples, "Monte Carlo samples per clause")->capture_default_str();
    sub->add_option("--k", k_override, "Threshold k (default: from the graph)");
    sub->add_option("--max-witnesses", max_witnesses, "Violations listed per clause")->capture_default_str();
    sub->add_flag("--gate", gate, "Exit 1 when a clause fails");
    sub->add_flag("--require-fraction", require_fraction, "Gate on the exactly-t fraction clause too");
    sub->callback([&] {
      action = [&] {
        const ColouredBipartiteGraph g = read_graph(graph_path);
        VerifyOptions opts;
        opts.mode = parse_verify_mode(mode_text);
        opts.budget = common.budget;
        opts.samples = samples;
        opts.seed = derive_seed(common.seed, "verify", 0);
        opts.max_witnesses = max_witnesses;
        const GraphKind kind = kind_from(kind_text, g);
        const VerificationReport r =
            kind == GraphKind::panchromatic ? verify_panchromatic(g, opts) : verify_threshold(g, opts, k_override);
        emit(header("verify", common) + "graph=" + graph_path + "\n" + r.to_text(), common, out);
        if (gate && !r.passed(require_fraction)) {
          err << "verification failed";
          for (const auto& w : r.witnesses) err << "; " << w.clause << " {" << join(w.vertices) << "} size " << w.size;
          err << '\n';
          return kGateFailed;
        }
        return kOk;
      };
    });
  }

  // batch
  std::uint64_t trials = 1;
  {
    auto* sub = app.add_subcommand("batch", "Sample several graphs and keep the best");
    add_common(sub, common, true);
    sub->add_option("--kind", kind_text, "threshold or panchromatic")->required();
    sub->add_option("--k", k, "Parameter k")->required();
    sub->add_option("--lambda", lambda, "Degree ratio (panchromatic)")->capture_default_str();
    sub->add_option("--q", q, "Field order")->required();
    sub->add_option("--trials", trials, "Number of sampled graphs")->required();
    sub->add_option("--mode", mode_text, "Verification mode: exhaustive, mc or auto")->capture_default_str();
    sub->add_option("--samples", samples, "Monte Carlo samples per clause")->capture_default_str();
    sub->add_option("--out", out_path, "Write the selected graph here");
    sub->add_flag("--require-fraction", require_fraction, "Count the exactly-t fraction clause");
    sub->callback([&] {
      action = [&] {
        BatchRequest req;
        req.kind = parse_graph_kind(kind_text);
        req.k = k;
        req.lambda = lambda;
        req.q = q;
        req.trials = trials;
        req.master_seed = common.seed;
        req.budget = common.budget;
        req.verify.mode = parse_verify_mode(mode_text);
        req.verify.budget = common.budget;
        req.verify.samples = samples;
        req.require_fraction = require_fraction;
        const BatchResult res = batch_sample_and_select(req);
        if (!out_path.empty()) write_graph(out_path, res.graph);
        std::ostringstream os;
        os << header("batch", common) << "trials=" << trials << '\n'
           << "trial_index=" << res.trial_index << '\n'
           << "passing_trials=" << res.passing_trials << '\n';
        for (const auto& t : res.trials) {
          os << "trial." << t.index << '=' << (t.passed ? "pass" : "fail") << ":sound_violations=" << t.sound_violations
             << ":complete_violations=" << t.complete_violations << '\n';
        }
        os << res.report.to_text();
        emit(os.str(), common, out);
        return kOk;
      };
    });
  }

  // bezout
  std::vector<unsigned> degrees;
  bool exact = false;
  std::uint64_t bezout_trials_n = 10'000;
  {
    auto* sub = app.add_subcommand("bezout", "Distribution of the number of common zeros");
    add_common(sub, common, true);
    sub->add_option("--k", k, "Number of variables")->required();
    sub->add_option("--degrees", degrees, "Comma-separated degree bounds")->required()->delimiter(',');
    sub->add_option("--q", q, "Field order")->required();
    auto* ex = sub->add_flag("--exact", exact, "Enumerate the full sample space");
    sub->add_option("--trials", bezout_trials_n, "Monte Carlo trials")->excludes(ex);
    sub->callback([&] {
      action = [&] {
        const ZHistogram h = exact ? bezout_exact(k, degrees, q, common.budget)
                                   : bezout_trials(k, degrees, q, bezout_trials_n,
                                                   derive_seed(common.seed, "bezout", 0), common.budget);
        emit(header("bezout", common) + h.to_text(), common, out);
        return kOk;
      };
    });
  }

  // vanish
  unsigned degree = 0;
  std::string points_text;
  {
    auto* sub = app.add_subcommand("vanish", "Exact probability that a random polynomial vanishes on given points");
    add_common(sub, common, false);
    sub->add_option("--k", k, "Number of variables")->required();
    sub->add_option("--d", degree, "Degree bound")->required();
    sub->add_option("--q", q, "Field order")->required();
    sub->add_option("--points", points_text, "Points: '1,2' for k = 1, '0:1,2:3' for k = 2");
    sub->callback([&] {
      action = [&] {
        const FieldSpec field(q);
        const auto points = parse_points(points_text, k, field);
        const VanishResult r = vanish_probability_exact(k, degree, q, points, common.budget);
        std::ostringstream os;
        os << header("vanish", common) << "k=" << k << "\nd=" << degree << "\nq=" << q << "\nm=" << points.size()
           << "\nvanishing=" << r.vanishing << "\ntotal=" << r.total << "\nprobability=" << r.probability << '\n';
        if (auto qm = checked_pow(q, static_cast<unsigned>(points.size())); qm && *qm <= INT64_MAX) {
          os << "q_pow_minus_m=" << Rational(1, static_cast<std::int64_t>(*qm)) << '\n';
        }
        os << "hypotheses_hold=" << (r.hypotheses_hold ? "true" : "false") << '\n';
        emit(os.str(), common, out);
        return kOk;
      };
    });
  }

  // solve
  std::string instance_path;
  std::string problem;
  unsigned query_k = 0;
  {
    auto* sub = app.add_subcommand("solve", "Exhaustive solvers");
    add_common(sub, common, false);
    sub->add_option("--instance", instance_path, "Instance file")->required();
    sub->add_option("--problem", problem, "maxint, panchromatic, mincov, mono, maxcover or unique")
        ->required()
        ->check(CLI::IsMember({"maxint", "panchromatic", "mincov", "mono", "maxcover", "unique"}));
    sub->add_option("--k", query_k, "Query size (default: the instance's k)");
    sub->callback([&] {
      action = [&] {
        const std::string text = read_text_file(instance_path);
        std::ostringstream os;
        os << header("solve", common) << "problem=" << problem << '\n';
        if (problem == "maxcover" || problem == "unique") {
          const MaxCoverInstance inst = parse_maxcover(text);
          if (problem == "unique") {
            os << "unique=" << (is_unique_maxcover(inst, common.budget) ? "true" : "false") << '\n';
          } else {
            const MaxCoverSolution s = solve_maxcover(inst, common.budget);
            os << "labeling=" << join(s.labeling) << "\ncovered=" << s.covered << "\nfraction=" << s.fraction << '\n';
          }
        } else {
          const SetSystemInstance inst = parse_instance(text);
          const unsigned kk = query_k ? query_k : inst.k;
          if (problem == "mono") {
            os << "value=" << monochromatic_number(inst, kk, common.budget) << '\n';
          } else {
            Solution s;
            if (problem == "panchromatic") {
              s = solve_panchromatic(inst, common.budget);
            } else {
              const SetSystemInstance flat = inst.coloured ? flatten(inst, kk) : inst;
              s = problem == "maxint" ? solve_max_intersection(flat, kk, common.budget)
                                      : solve_min_coverage(flat, kk, common.budget);
            }
            os << "indices=" << join(s.indices) << "\nvalue=" << s.value << '\n';
          }
        }
        emit(os.str(), common, out);
        return kOk;
      };
    });
  }

  // compositions
  std::string mode_bij = "random";
  std::optional<std::uint64_t> z;
  std::string graph0_path;
  {
    auto* sub = app.add_subcommand("compose-pgc", "Compose a coloured instance with a panchromatic graph");
    add_common(sub, common, true);
    sub->add_option("--instance", instance_path, "Coloured set-system instance")->required();
    sub->add_option("--graph", graph_path, "Panchromatic graph file")->required();
    sub->add_option("--mode", mode_bij, "random or canonical")->capture_default_str();
    sub->add_option("--z", z, "Monochromatic number (computed when omitted)");
    sub->add_option("--out", out_path, "Output instance file")->required();
    sub->callback([&] {
      action = [&] {
        const SetSystemInstance inst = parse_instance(read_text_file(instance_path));
        const ColouredBipartiteGraph h = read_graph(graph_path);
        Rng rng(derive_seed(common.seed, "pgc", 0));
        const PgcResult res = pgc_compose(inst, h, parse_bijection_mode(mode_bij), rng, z, common.budget);
        write_text_file(out_path, format_instance(res.instance));
        std::ostringstream os;
        os << header("compose-pgc", common) << "mode=" << mode_bij << '\n'
           << instance_summary(res.instance) << "z=" << res.z << '\n';
        for (std::size_t r = 0; r < res.bijections.size(); ++r) os << "pi." << r << '=' << join(res.bijections[r]) << '\n';
        os << "out=" << out_path << '\n';
        emit(os.str(), common, out);
        return kOk;
      };
    });
  }
  {
    auto* sub = app.add_subcommand("compose-tgc", "Compose a MinCoverage instance with a threshold graph");
    add_common(sub, common, false);
    sub->add_option("--instance", instance_path, "Uncoloured set-system instance")->required();
    sub->add_option("--graph", graph_path, "Threshold graph file")->required();
    sub->add_option("--out", out_path, "Output instance file")->required();
    sub->callback([&] {
      action = [&] {
        const SetSystemInstance inst = parse_instance(read_text_file(instance_path));
        const SetSystemInstance res = tgc_compose(inst, read_graph(graph_path));
        write_text_file(out_path, format_instance(res));
        emit(header("compose-tgc", common) + instance_summary(res) + "out=" + out_path + "\n", common, out);
        return kOk;
      };
    });
  }
  {
    auto* sub = app.add_subcommand("compose-clique", "Compose a simple graph with a threshold graph");
    add_common(sub, common, false);
    sub->add_option("--graph0", graph0_path, "Simple graph (edge list)")->required();
    sub->add_option("--graph", graph_path, "Threshold graph file")->required();
    sub->add_option("--k", k, "Clique size")->required();
    sub->add_option("--out", out_path, "Output instance file")->required();
    sub->callback([&] {
      action = [&] {
        const SimpleGraph g0 = parse_simple_graph(read_text_file(graph0_path));
        const SetSystemInstance res = clique_tgc_compose(g0, read_graph(graph_path), k);
        write_text_file(out_path, format_instance(res));
        emit(header("compose-clique", common) + instance_summary(res) + "out=" + out_path + "\n", common, out);
        return kOk;
      };
    });
  }
  {
    auto* sub = app.add_subcommand("convert-maxcover", "MaxCover instance to a panchromatic set-system instance");
    add_common(sub, common, false);
    sub->add_option("--instance", instance_path, "MaxCover instance")->required();
    sub->add_option("--out", out_path, "Output instance file")->required();
    sub->callback([&] {
      action = [&] {
        const MaxCoverInstance mc = parse_maxcover(read_text_file(instance_path));
        const SetSystemInstance res = maxcover_to_panchromatic(mc);
        write_text_file(out_path, format_instance(res));
        emit(header("convert-maxcover", common) + instance_summary(res) + "out=" + out_path + "\n", common, out);
        return kOk;
      };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  ThreadScope threads(common.threads);
  try {
    return action();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Overflow& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace extremal::cli
