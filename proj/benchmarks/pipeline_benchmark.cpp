#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "yoro/pipeline.hpp"

using namespace yoro;

namespace {

AdjacencyModel load(const std::string& name) {
  std::ifstream is(std::string(YORO_FIXTURE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << is.rdbuf();
  auto [g, cat] = parse_grid(ss.str());
  return analyze(g, cat.size());
}

EncodeOptions square(std::size_t n) { return {n, n, true, false, std::nullopt}; }

void BM_EncodeTileLevel(benchmark::State& state) {
  auto m = load("overworld10.txt");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(encode(m, square(n)));
}
BENCHMARK(BM_EncodeTileLevel)->Arg(20)->Arg(40);

void BM_EncodeNeighborhoodPath(benchmark::State& state) {
  auto m = load("overworld10.txt");
  auto o = square(static_cast<std::size_t>(state.range(0)));
  o.neighborhood_level = true;
  o.path = PathSpec{{3}};
  for (auto _ : state) benchmark::DoNotOptimize(encode(m, o));
}
BENCHMARK(BM_EncodeNeighborhoodPath)->Arg(20);

void BM_BuildOrdering(benchmark::State& state) {
  auto m = load("overworld10.txt");
  auto enc = encode(m, square(40));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_ordering(enc, m, OrderingStrategy::TileFrequency, GumbelRng(seed++)));
}
BENCHMARK(BM_BuildOrdering);

void BM_Solve(benchmark::State& state) {
  auto m = load("overworld.txt");
  GenerateOptions o;
  o.encode = square(static_cast<std::size_t>(state.range(0)));
  o.encode.path = PathSpec{{2}};
  auto prep = prepare(m, o);
  for (auto _ : state) benchmark::DoNotOptimize(solve(prep.solver_formula));
}
BENCHMARK(BM_Solve)->Arg(20)->Arg(40);

void BM_GenerateNeighborhood(benchmark::State& state) {
  auto m = load("overworld10.txt");
  GenerateOptions o;
  o.encode = square(20);
  o.encode.neighborhood_level = true;
  o.strategy = OrderingStrategy::NeighborhoodFrequency;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    o.seed = seed++;
    benchmark::DoNotOptimize(generate(m, o));
  }
}
BENCHMARK(BM_GenerateNeighborhood)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
