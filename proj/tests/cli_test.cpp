#include "cli.hpp"

#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <sstream>

#include "extremal/bigraph.hpp"
#include "extremal/setsys.hpp"
#include "support.hpp"

namespace extremal {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("extremal_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

TEST_CASE("generate then verify") {
  TempDir dir;
  const auto gen = run({"gen-threshold", "--k", "1", "--q", "11", "--seed", "7", "--out", dir / "g.bin"});
  REQUIRE(gen.code == cli::kOk);
  CHECK(has(gen.out, "tool=extremal\n"));
  CHECK(has(gen.out, "seed=7\n"));
  CHECK(has(gen.out, "num_left=121\n"));
  CHECK(has(gen.out, "field_draws=2541\n"));
  const ColouredBipartiteGraph g = read_graph(dir / "g.bin");
  CHECK(g.num_left() == 121);

  const auto ver = run({"verify", "--graph", dir / "g.bin", "--kind", "threshold", "--mode", "exhaustive", "--report",
                        dir / "r.txt"});
  REQUIRE(ver.code == cli::kOk);
  CHECK(has(ver.out, "min_complete="));
  CHECK(has(ver.out, "max_sound="));
  CHECK(has(ver.out, "command=verify\n"));
  CHECK(read_text_file(dir / "r.txt") == ver.out);
}

TEST_CASE("statistics subcommands") {
  const auto b = run({"bezout", "--k", "1", "--degrees", "1", "--q", "5", "--exact"});
  REQUIRE(b.code == cli::kOk);
  CHECK(has(b.out, "counts={0:4, 1:20, 5:1}"));

  const auto v = run({"vanish", "--k", "1", "--d", "2", "--q", "5", "--points", "1,2"});
  REQUIRE(v.code == cli::kOk);
  CHECK(has(v.out, "probability=1/25\n"));

  const auto v2 = run({"vanish", "--k", "2", "--d", "2", "--q", "5", "--points", "0:1,3:4"});
  REQUIRE(v2.code == cli::kOk);
  CHECK(has(v2.out, "probability=1/25\n"));

  const auto mc = run({"bezout", "--k", "2", "--degrees", "1,1", "--q", "7", "--trials", "300", "--seed", "4"});
  REQUIRE(mc.code == cli::kOk);
  CHECK(has(mc.out, "trials=300\n"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"gen-threshold", "--k", "1"}).code == cli::kUsage);
  CHECK(run({"gen-threshold", "--k", "1", "--q", "6", "--out", "/dev/null"}).code == cli::kUsage);
  CHECK(run({"verify", "--graph", "/nonexistent/graph.bin"}).code == cli::kUsage);
  CHECK(run({"vanish", "--k", "1", "--d", "2", "--q", "5", "--points", "1,1"}).code == cli::kUsage);
  CHECK(run({"vanish", "--k", "1", "--d", "2", "--q", "5", "--points", "1:2"}).code == cli::kUsage);
  CHECK(run({"solve", "--instance", "x", "--problem", "nope"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("budget errors exit 3 and name the bound") {
  TempDir dir;
  REQUIRE(run({"gen-threshold", "--k", "1", "--q", "5", "--out", dir / "g.bin"}).code == cli::kOk);
  const auto r = run({"verify", "--graph", dir / "g.bin", "--mode", "exhaustive", "--budget", "10"});
  CHECK(r.code == cli::kInfeasible);
  CHECK(has(r.err, "10"));
  CHECK(run({"bezout", "--k", "2", "--degrees", "2,2", "--q", "11", "--exact", "--budget", "1000"}).code ==
        cli::kInfeasible);
}

TEST_CASE("gate failure exits 1 with witnesses") {
  TempDir dir;
  // At q = 5 some vertex has fewer than 5/2 neighbours for this seed.
  REQUIRE(run({"gen-threshold", "--k", "1", "--q", "5", "--seed", "3", "--out", dir / "g.bin"}).code == cli::kOk);
  const auto r = run({"verify", "--graph", dir / "g.bin", "--mode", "exhaustive", "--gate"});
  CHECK(r.code == cli::kGateFailed);
  CHECK(has(r.err, "completeness {"));
  CHECK(has(r.out, "witness.0=completeness:"));
  CHECK(run({"verify", "--graph", dir / "g.bin", "--mode", "exhaustive"}).code == cli::kOk);
}

TEST_CASE("outputs do not depend on thread count") {
  TempDir dir;
  const std::vector<std::vector<std::string>> commands{
      {"gen-panchromatic", "--k", "2", "--lambda", "2", "--q", "5", "--seed", "9", "--out", dir / "p.bin"},
      {"verify", "--graph", dir / "p.bin", "--mode", "mc", "--samples", "3000", "--seed", "2"},
      {"batch", "--kind", "panchromatic", "--k", "2", "--q", "5", "--trials", "3", "--mode", "mc", "--samples",
       "500", "--seed", "5"},
      {"bezout", "--k", "2", "--degrees", "1,1", "--q", "11", "--trials", "2000", "--seed", "1"},
  };
  for (const auto& base : commands) {
    auto a = base, b = base;
    a.insert(a.end(), {"--threads", "1"});
    b.insert(b.end(), {"--threads", "8"});
    const auto ra = run(a);
    const std::string bytes_a = base[0] == "gen-panchromatic" ? read_text_file(dir / "p.bin") : "";
    const auto rb = run(b);
    const std::string bytes_b = base[0] == "gen-panchromatic" ? read_text_file(dir / "p.bin") : "";
    REQUIRE(ra.code == cli::kOk);
    CHECK(ra.out == rb.out);
    CHECK(bytes_a == bytes_b);
  }
}

TEST_CASE("artifacts round trip between subcommands") {
  TempDir dir;
  // MaxCover -> panchromatic instance -> solve.
  const auto conv = run({"convert-maxcover", "--instance", (testing::data_dir() / "unique_maxcover_a.txt").string(),
                         "--out", dir / "pan.txt"});
  REQUIRE(conv.code == cli::kOk);
  const auto mc = run({"solve", "--instance", (testing::data_dir() / "unique_maxcover_a.txt").string(), "--problem",
                       "maxcover"});
  REQUIRE(mc.code == cli::kOk);
  const auto pan = run({"solve", "--instance", dir / "pan.txt", "--problem", "panchromatic"});
  REQUIRE(pan.code == cli::kOk);
  const auto covered = mc.out.substr(mc.out.find("covered=") + 8);
  const auto value = pan.out.substr(pan.out.find("value=") + 6);
  CHECK(covered.substr(0, covered.find('\n')) == value.substr(0, value.find('\n')));
  CHECK(has(run({"solve", "--instance", (testing::data_dir() / "unique_maxcover_a.txt").string(), "--problem",
                 "unique"})
                .out,
            "unique=true\n"));

  // Coloured instance with the hand fixture through PGC.
  write_graph(dir / "h.bin", testing::hand_panchromatic());
  SetSystemInstance inst;
  inst.universe_size = 3;
  inst.coloured = true;
  inst.k = 2;
  inst.c = Rational(2);
  inst.s = Rational(1);
  inst.collections = {{make_set(3, {0, 1}), make_set(3, {2})}, {make_set(3, {0, 1, 2}), make_set(3, {1})}};
  write_text_file(dir / "inst.txt", format_instance(inst));
  const auto pgc = run({"compose-pgc", "--instance", dir / "inst.txt", "--graph", dir / "h.bin", "--mode",
                        "canonical", "--out", dir / "pgc.txt"});
  REQUIRE(pgc.code == cli::kOk);
  CHECK(has(pgc.out, "universe=9\n"));
  CHECK(has(pgc.out, "pi.0=0,1\n"));
  const auto solved = run({"solve", "--instance", dir / "pgc.txt", "--problem", "maxint"});
  REQUIRE(solved.code == cli::kOk);
  CHECK(has(solved.out, "value=4\n"));  // {0, 1} x {x, y}

  // MinCoverage through TGC, simple graph through the clique composition.
  REQUIRE(run({"gen-threshold", "--k", "1", "--q", "2", "--seed", "1", "--out", dir / "t.bin"}).code == cli::kOk);
  SetSystemInstance cov;
  cov.universe_size = 4;
  cov.k = 2;
  cov.c = Rational(1);
  cov.s = Rational(3);
  cov.collections = {{make_set(4, {0}), make_set(4, {0, 1}), make_set(4, {2, 3})}};
  write_text_file(dir / "cov.txt", format_instance(cov));
  const auto tgc = run({"compose-tgc", "--instance", dir / "cov.txt", "--graph", dir / "t.bin", "--out",
                        dir / "tgc.txt"});
  REQUIRE(tgc.code == cli::kOk);
  CHECK(parse_instance(read_text_file(dir / "tgc.txt")).universe_size == 4);

  write_text_file(dir / "g0.txt", format_simple_graph(SimpleGraph{4, {{0, 1}, {0, 2}, {1, 2}}}));
  const auto clique = run({"compose-clique", "--graph0", dir / "g0.txt", "--graph", dir / "t.bin", "--k", "3",
                           "--out", dir / "clique.txt"});
  REQUIRE(clique.code == cli::kOk);
  CHECK(has(clique.out, "k=3\n"));
  CHECK(run({"solve", "--instance", dir / "clique.txt", "--problem", "maxint"}).code == cli::kOk);

  CHECK(run({"solve", "--instance", dir / "g0.txt", "--problem", "maxint"}).code == cli::kUsage);
}

}  // namespace
}  // namespace extremal
