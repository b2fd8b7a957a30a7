#include <benchmark/benchmark.h>

#include "trl/binary_cubic.hpp"
#include "trl/ff_oracle.hpp"
#include "trl/generators.hpp"
#include "trl/multilinear.hpp"
#include "trl/numeric_rank.hpp"

using namespace trl;

static void BM_BruteRankW(benchmark::State& state) {
  const Tensor w = w_tensor(FieldTag::finite(static_cast<int>(state.range(0)))).tensor();
  for (auto _ : state) benchmark::DoNotOptimize(brute_rank(w).rank);
}
BENCHMARK(BM_BruteRankW)->Arg(3)->Arg(5)->Arg(7);

static void BM_BruteRankCube3(benchmark::State& state) {
  const Tensor t = random_symmetric(FieldTag::finite(3), 3, 3, static_cast<std::uint64_t>(state.range(0))).tensor();
  for (auto _ : state) benchmark::DoNotOptimize(brute_rank(t).rank);
}
BENCHMARK(BM_BruteRankCube3)->DenseRange(0, 3);

static void BM_BruteSrank(benchmark::State& state) {
  const SymTensor s = random_symmetric(FieldTag::finite(3), 3, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(brute_srank(s).value);
}
BENCHMARK(BM_BruteSrank);

static void BM_Census(benchmark::State& state) {
  const FieldTag tag = FieldTag::finite(static_cast<int>(state.range(0)));
  CensusOptions options;
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(census(tag, 3, 2, options).total_symmetric);
}
BENCHMARK(BM_Census)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_DecomposeBinaryCubic(benchmark::State& state) {
  const FieldTag tag = FieldTag::finite(7);
  std::vector<SymTensor> inputs;
  for (long long code = 0; code < symmetric_space_size(tag, 3, 2); ++code) inputs.push_back(symmetric_from_code(tag, 3, 2, code));
  for (auto _ : state) {
    for (const auto& s : inputs) benchmark::DoNotOptimize(decompose_s3f2(s).decomposition.terms.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(inputs.size()));
}
BENCHMARK(BM_DecomposeBinaryCubic)->Unit(benchmark::kMillisecond);

static void BM_KruskalCertify(benchmark::State& state) {
  const FieldTag q = FieldTag::rational();
  Decomposition dec;
  for (int i = 0; i < 4; ++i) dec.terms.push_back(RankOneTerm::power(Scalar::one(q), unit_vector(q, 4, i), 3));
  for (auto _ : state) benchmark::DoNotOptimize(kruskal_certify(dec, 3).unique);
}
BENCHMARK(BM_KruskalCertify);

static void BM_Pencil(benchmark::State& state) {
  const SymTensor s = random_symmetric(FieldTag::real_float(), 3, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(pencil_rank2_test(s).rank_le_2);
}
BENCHMARK(BM_Pencil);

static void BM_DetectBorder(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SymTensor s(border_tensor(random_border_form(FieldTag::complex_float(), d, 4, 1)));
  for (auto _ : state) benchmark::DoNotOptimize(detect_border_rank2(s).has_value());
}
BENCHMARK(BM_DetectBorder)->DenseRange(3, 5);

static void BM_BestSymRank1(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SymTensor s = random_symmetric(FieldTag::real_float(), d, 3, 9);
  PowerOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(best_sym_rank1(s, options).residual);
}
BENCHMARK(BM_BestSymRank1)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
