#include <benchmark/benchmark.h>

#include "blockforge/blocks.hpp"
#include "blockforge/chartab.hpp"
#include "blockforge/finite_field.hpp"
#include "blockforge/partitions.hpp"
#include "blockforge/witnesses.hpp"

#ifndef BLOCKFORGE_SOURCE_FIXTURES
#define BLOCKFORGE_SOURCE_FIXTURES "data/fixtures"
#endif

using namespace blockforge;

static void BM_FieldMul(benchmark::State& state) {
  const auto& f = field_of_order(static_cast<std::uint64_t>(state.range(0)));
  FieldCode x = f.generator();
  FieldCode acc = 1;
  for (auto _ : state) {
    acc = f.mul(acc, x);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(7)->Arg(81)->Arg(3125);

static void BM_CycMul(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  CycInt a = CycInt::zeta(n) + CycInt(3) * CycInt::zeta(n, 5);
  CycInt b = CycInt::zeta(n, 2) - CycInt(2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycMul)->Arg(24)->Arg(312)->Arg(1320);

static void BM_ComputeTable(benchmark::State& state) {
  const auto spec = group_create(state.range(0) ? Family::SU : Family::SL, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(compute_table(spec));
}
BENCHMARK(BM_ComputeTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_BlocksM22Cover(benchmark::State& state) {
  const auto t = ingest_table(std::string(BLOCKFORGE_SOURCE_FIXTURES) + "/12m22.ctx");
  for (auto _ : state) benchmark::DoNotOptimize(block_partition(t, 2));
}
BENCHMARK(BM_BlocksM22Cover)->Unit(benchmark::kMillisecond);

static void BM_CertifyTypeA(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto c = construct_typeA(n, 9, 1);
    benchmark::DoNotOptimize(certify(std::get<Witness>(c)));
  }
}
BENCHMARK(BM_CertifyTypeA)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

static void BM_TwoCore(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(alternating_witness(n));
}
BENCHMARK(BM_TwoCore)->Arg(8)->Arg(40)->Arg(400);

BENCHMARK_MAIN();
