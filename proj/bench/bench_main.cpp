// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "extremal/construct.hpp"
#include "extremal/serial.hpp"
#include "extremal/setsys.hpp"
#include "extremal/verify.hpp"

namespace extremal {
namespace {

std::vector<std::vector<MPoly>> threshold_polys(std::uint64_t q) {
  const FieldSpec f(q);
  Rng rng(1);
  const auto basis = MonomialBasis::make(2, 5);
  std::vector<MPoly> polys;
  for (std::uint64_t i = 0; i < q * q; ++i) polys.push_back(sample_mpoly(basis, f, rng));
  return {polys};
}

void BM_BuildGraph(benchmark::State& state) {
  const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
  const FieldSpec f(q);
  const auto classes = threshold_polys(q);
  for (auto _ : state) benchmark::DoNotOptimize(from_polynomials(classes, f, 2));
}

void BM_BuildGraphSerial(benchmark::State& state) {
  const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
  const FieldSpec f(q);
  const auto classes = threshold_polys(q);
  for (auto _ : state) benchmark::DoNotOptimize(serial::from_polynomials(classes, f, 2));
}

ColouredBipartiteGraph threshold_graph(std::uint64_t q) {
  Rng rng(2);
  return sample_threshold(1, q, rng);
}

void BM_VerifyThreshold(benchmark::State& state) {
  const auto g = threshold_graph(static_cast<std::uint64_t>(state.range(0)));
  VerifyOptions o;
  o.mode = VerifyMode::exhaustive;
  for (auto _ : state) benchmark::DoNotOptimize(verify_threshold(g, o));
}

void BM_VerifyThresholdSerial(benchmark::State& state) {
  const auto g = threshold_graph(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::verify_threshold(g, 1));
}

ColouredBipartiteGraph panchromatic_graph(std::uint64_t q) {
  Rng rng(3);
  return sample_panchromatic(2, 2, q, rng);
}

void BM_VerifyPanchromatic(benchmark::State& state) {
  const auto g = panchromatic_graph(static_cast<std::uint64_t>(state.range(0)));
  VerifyOptions o;
  o.mode = VerifyMode::exhaustive;
  for (auto _ : state) benchmark::DoNotOptimize(verify_panchromatic(g, o));
}

void BM_VerifyPanchromaticSerial(benchmark::State& state) {
  const auto g = panchromatic_graph(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::verify_panchromatic(g));
}

SetSystemInstance random_instance(std::size_t sets, std::size_t universe) {
  std::mt19937_64 gen(4);
  std::bernoulli_distribution coin(0.5);
  SetSystemInstance inst;
  inst.universe_size = universe;
  inst.k = 3;
  inst.collections.emplace_back();
  for (std::size_t i = 0; i < sets; ++i) {
    Bitset s(universe);
    for (std::size_t e = 0; e < universe; ++e)
      if (coin(gen)) s.set(e);
    inst.collections[0].push_back(s);
  }
  return inst;
}

void BM_MaxIntersection(benchmark::State& state) {
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(solve_max_intersection(inst, 3));
}

void BM_MaxIntersectionSerial(benchmark::State& state) {
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(serial::solve_max_intersection(inst, 3));
}

void BM_BezoutExact(benchmark::State& state) {
  const std::vector<unsigned> degrees{1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(bezout_exact(2, degrees, static_cast<std::uint64_t>(state.range(0))));
}

void BM_BezoutExactSerial(benchmark::State& state) {
  const std::vector<unsigned> degrees{1, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(serial::bezout_exact(2, degrees, static_cast<std::uint64_t>(state.range(0))));
}

BENCHMARK(BM_BuildGraph)->Arg(11)->Arg(23)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildGraphSerial)->Arg(11)->Arg(23)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyThreshold)->Arg(11)->Arg(23)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyThresholdSerial)->Arg(11)->Arg(23)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyPanchromatic)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyPanchromaticSerial)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxIntersection)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxIntersectionSerial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BezoutExact)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BezoutExactSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace extremal

BENCHMARK_MAIN();
