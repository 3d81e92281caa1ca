#include <benchmark/benchmark.h>

#include <string>

#include "dtqft/computad.hpp"
#include "dtqft/gray.hpp"
#include "dtqft/io.hpp"
#include "dtqft/tqft_engines.hpp"

using namespace dtqft;

namespace {

std::string data(const std::string& rel) { return std::string(DTQFT_BENCH_DATA) + "/" + rel; }
FusionCategory category(const std::string& n) { return load_category(data("categories/" + n + ".json")); }
StratifiedBordism bordism(const std::string& n) {
  return bordism_from_json(read_json_file(data("bordisms/" + n + ".json")));
}

void BM_Coherence(benchmark::State& st) {
  auto cat = category("fibonacci");
  for (auto _ : st) benchmark::DoNotOptimize(check_category(cat, 1e-9));
}
BENCHMARK(BM_Coherence);

void BM_StateSumS3(benchmark::State& st) {
  auto cat = category("fibonacci");
  auto b = bordism("s3_boundary_delta4");
  for (auto _ : st) benchmark::DoNotOptimize(closed_invariant(cat, b));
}
BENCHMARK(BM_StateSumS3);

void BM_StateSumS2xS1(benchmark::State& st) {
  auto cat = category("fibonacci");
  auto b = bordism("s2xs1");
  for (auto _ : st) benchmark::DoNotOptimize(closed_invariant(cat, b));
}
BENCHMARK(BM_StateSumS2xS1);

void BM_TorusProjector(benchmark::State& st) {
  auto cat = category("vec_z3");
  auto s = surface_from_json(read_json_file(data("surfaces/torus.json")));
  for (auto _ : st) benchmark::DoNotOptimize(state_space(cat, s));
}
BENCHMARK(BM_TorusProjector);

void BM_Computad(benchmark::State& st) {
  auto dd = build_group_defect_data(GroupTable::cyclic(3));
  const int len = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_computad(dd, len));
}
BENCHMARK(BM_Computad)->DenseRange(2, 5);

void BM_GrayAxiomsSample(benchmark::State& st) {
  auto cat = category("vec_z2_graded");
  auto dd = load_defect_data(data("defect/z2.json"));
  GrayModel m{Engine::StateSum, &cat, &dd};
  GrayCheckOptions opt;
  opt.sample_size = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(check_gray_axioms(m, opt));
}
BENCHMARK(BM_GrayAxiomsSample)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
