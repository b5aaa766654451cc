#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "ocasync/bigint.hpp"
#include "ocasync/kripke.hpp"
#include "ocasync/mc.hpp"
#include "ocasync/oca_io.hpp"
#include "ocasync/oracle.hpp"
#include "ocasync/periodicity.hpp"

using namespace ocasync;

namespace {

Oca corpus(const std::string& name) {
  return load_oca_file(std::string(OCASYNC_CORPUS_DIR) + "/" + name + ".oca");
}

void BM_LcmRange(benchmark::State& st) {
  const auto n = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(lcm_range(n));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_LcmRange)->RangeMultiplier(8)->Range(64, 1 << 21)->Unit(benchmark::kMillisecond)->Complexity();

void BM_UaBundle(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ua_constants(n, 0, 1));
}
BENCHMARK(BM_UaBundle)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_UnfoldAndLabel(benchmark::State& st) {
  Oca oca = corpus("asymmetric-fork");
  Formula f = parse_formula("A true U (q UE p)");
  const Counter t = st.range(0);
  for (auto _ : st) {
    Kripke k = unfold_kripke(oca, t, 2);
    benchmark::DoNotOptimize(label_all(k, f));
  }
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_UnfoldAndLabel)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMicrosecond)->Complexity();

void BM_CheckUaRandom(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(st.range(0));
  std::vector<std::vector<NodeId>> succ(n);
  std::vector<std::vector<AtomId>> labels(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (int j = 0; j < 2; ++j) succ[u].push_back(static_cast<NodeId>(rng() % n));
    if (rng() % 4 == 0) labels[u].push_back(0);
  }
  Kripke k({"b"}, labels, succ);
  NodeSet all(n, true), target(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (k.holds(static_cast<NodeId>(u), 0)) target.set(u);
  }
  for (auto _ : st) benchmark::DoNotOptimize(check_ua(k, 0, all, target));
}
BENCHMARK(BM_CheckUaRandom)->RangeMultiplier(4)->Range(16, 4096)->Unit(benchmark::kMicrosecond);

void BM_OracleEval(benchmark::State& st) {
  Oca oca = corpus("random-a");
  Formula f = parse_formula("FA (EX q)");
  const OracleCaps caps{static_cast<Counter>(st.range(0)), 200};
  for (auto _ : st) {
    BoundedEvaluator ev(oca, f, caps);
    for (Counter v = 0; v <= 12; ++v) benchmark::DoNotOptimize(ev.eval({0, v}));
  }
}
BENCHMARK(BM_OracleEval)->Arg(20)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_CheckOcaEmpirical(benchmark::State& st) {
  Oca oca = corpus("fork");
  Formula f = parse_formula("!q UA p");
  for (auto _ : st) benchmark::DoNotOptimize(check_oca(oca, f, {0, 3}, Mode::empirical()));
}
BENCHMARK(BM_CheckOcaEmpirical)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
