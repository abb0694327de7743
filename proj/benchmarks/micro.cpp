#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "nassc/ir/qasm.hpp"
#include "nassc/routing/pipeline.hpp"
#include "nassc/synthesis/two_qubit.hpp"
#include "nassc/topology/coupling_map.hpp"

using namespace nassc;

namespace {

ir::Mat4 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ir::Mat4 z;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) z(i, j) = ir::cplx(n(rng), n(rng));
  }
  Eigen::HouseholderQR<ir::Mat4> qr(z);
  return qr.householderQ();
}

void BM_MinCnotCount(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const ir::Mat4 u = random_unitary(rng);
  for (auto _ : state) benchmark::DoNotOptimize(synthesis::min_cnot_count(u));
}
BENCHMARK(BM_MinCnotCount);

void BM_KakSynthesize(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const ir::Mat4 u = random_unitary(rng);
  for (auto _ : state) benchmark::DoNotOptimize(synthesis::kak_synthesize(u, 0, 1));
}
BENCHMARK(BM_KakSynthesize);

void BM_Route(benchmark::State& state, routing::Algorithm algorithm, const std::string& name) {
  const ir::Circuit c = ir::load_qasm(std::string(NASSC_FIXTURE_DIR) + "/circuits/" + name + ".qasm");
  const auto map = topology::montreal();
  routing::RouterConfig cfg;
  cfg.algorithm = algorithm;
  for (auto _ : state) benchmark::DoNotOptimize(routing::full_pipeline(c, map, cfg).stats.cnot_total);
}
BENCHMARK_CAPTURE(BM_Route, sabre_grover4, routing::Algorithm::SABRE, "grover4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Route, nassc_grover4, routing::Algorithm::NASSC, "grover4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Route, sabre_qft15, routing::Algorithm::SABRE, "qft15")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Route, nassc_qft15, routing::Algorithm::NASSC, "qft15")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
