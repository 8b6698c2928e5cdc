#include <benchmark/benchmark.h>

#include <vector>

#include "bcrk/aux_chain.hpp"
#include "bcrk/channel.hpp"
#include "bcrk/common_part.hpp"
#include "bcrk/inner_bound.hpp"
#include "bcrk/prob.hpp"
#include "bcrk/rng.hpp"

namespace {

double bsc(double p, int a, int b) { return a == b ? 1.0 - p : p; }

bcrk::ChannelSpec bsc_pair(double py, double pz) {
  std::vector<double> table;
  table.reserve(8);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) table.push_back(bsc(py, x, y) * bsc(pz, x, z));
  return bcrk::ChannelSpec::make(2, 2, 2, table);
}

bcrk::SourceSpec correlated_source() {
  return bcrk::gacs_korner(bcrk::JointPmf::validated(
      {{"S", 2}, {"T", 2}}, {0.45, 0.05, 0.05, 0.45}));
}

void BM_InfoMeasure(benchmark::State& state) {
  bcrk::Rng rng(7);
  bcrk::JointPmf joint = bcrk::JointPmf::validated(
      {{"A", 3}, {"B", 3}, {"C", 3}, {"D", 3}}, rng.dirichlet(81));
  for (auto _ : state) {
    double v = bcrk::info_measure(joint, {"A", "D"}, {"B"}, {"C"});
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_InfoMeasure);

void BM_ComposeInner(benchmark::State& state) {
  bcrk::SourceSpec src = correlated_source();
  bcrk::ChannelSpec ch = bsc_pair(0.1, 0.2);
  bcrk::Rng rng(11);
  bcrk::InnerAuxChain chain = bcrk::sample_inner_chain(
      src, ch, bcrk::InnerCaps::defaults_for(ch), rng);
  for (auto _ : state) {
    bcrk::JointPmf joint = bcrk::compose_inner(src, ch, chain);
    benchmark::DoNotOptimize(joint.table().data());
  }
}
BENCHMARK(BM_ComposeInner);

void BM_EvalAchievability(benchmark::State& state) {
  bcrk::SourceSpec src = correlated_source();
  bcrk::ChannelSpec ch = bsc_pair(0.1, 0.2);
  bcrk::Rng rng(13);
  bcrk::InnerAuxChain chain = bcrk::sample_inner_chain(
      src, ch, bcrk::InnerCaps::defaults_for(ch), rng);
  for (auto _ : state) {
    bcrk::BoundReport rep = bcrk::eval_han_costa(src, ch, chain);
    benchmark::DoNotOptimize(rep.min_slack());
  }
}
BENCHMARK(BM_EvalAchievability);

void BM_MoreCapableGap(benchmark::State& state) {
  bcrk::ChannelSpec ch = bsc_pair(0.1, 0.2);
  std::vector<double> px = {0.4, 0.6};
  for (auto _ : state) {
    double g = bcrk::xy_minus_xz_gap(ch, px);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_MoreCapableGap);

void BM_DegradednessTest(benchmark::State& state) {
  bcrk::Rng rng(17);
  std::vector<double> table;
  for (int x = 0; x < 3; ++x) {
    std::vector<double> slice = rng.dirichlet(9);
    table.insert(table.end(), slice.begin(), slice.end());
  }
  bcrk::ChannelSpec ch = bcrk::ChannelSpec::make(3, 3, 3, table);
  for (auto _ : state) {
    bcrk::DegradednessResult res = bcrk::degradedness_test(ch);
    benchmark::DoNotOptimize(res.residual);
  }
}
BENCHMARK(BM_DegradednessTest);

}  // namespace

BENCHMARK_MAIN();
