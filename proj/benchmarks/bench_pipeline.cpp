#include <benchmark/benchmark.h>

#include <memory>

#include "dhecke/ffarith.hpp"
#include "dhecke/heckeops.hpp"
#include "dhecke/merel.hpp"
#include "dhecke/modsym.hpp"
#include "dhecke/p1list.hpp"
#include "dhecke/qexp_basis.hpp"
#include "dhecke/rows.hpp"

namespace {

void BM_P1List(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dhecke::P1List(state.range(0)).size());
}
BENCHMARK(BM_P1List)->Arg(253)->Arg(3197)->Arg(4309)->Unit(benchmark::kMillisecond);

void BM_ModularSymbolSpace(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dhecke::ModularSymbolSpace(state.range(0)).cuspidal_dimension());
}
BENCHMARK(BM_ModularSymbolSpace)->Arg(253)->Arg(1403)->Arg(3197)->Arg(4309)->Unit(benchmark::kMillisecond);

void BM_QExpBasis(benchmark::State& state) {
  const auto level = state.range(0);
  const auto space = std::make_shared<const dhecke::ModularSymbolSpace>(level);
  for (auto _ : state) {
    dhecke::QExpBasis basis(space, state.range(1), dhecke::pipeline_nterms(level));
    benchmark::DoNotOptimize(basis.dimension());
  }
}
BENCHMARK(BM_QExpBasis)->Args({253, 5})->Args({1403, 7})->Args({3427, 37})->Unit(benchmark::kMillisecond);

void BM_Transport(benchmark::State& state) {
  const auto level = state.range(0);
  const dhecke::QExpBasis basis(std::make_shared<const dhecke::ModularSymbolSpace>(level), 5,
                                dhecke::pipeline_nterms(level));
  for (auto _ : state) benchmark::DoNotOptimize(basis.transport(state.range(1)));
}
BENCHMARK(BM_Transport)->Args({253, 2})->Args({253, 23})->Args({1403, 3})->Unit(benchmark::kMillisecond);

void BM_Dlog(benchmark::State& state) {
  const auto q = state.range(0);
  std::int64_t x = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhecke::dlog(q, x));
    x = x % (q - 1) + 1;
  }
}
BENCHMARK(BM_Dlog)->Arg(149)->Arg(9973)->Arg(1000003);

void BM_MerelUnit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dhecke::merel_unit(state.range(0)).value.value);
}
BENCHMARK(BM_MerelUnit)->Arg(149)->Arg(100003);

// A full row with a private cache, so every iteration builds both levels.
void BM_Row(benchmark::State& state) {
  for (auto _ : state) {
    dhecke::LevelCache cache;
    dhecke::RowOptions options;
    options.cache = &cache;
    benchmark::DoNotOptimize(dhecke::compute_row({state.range(0), state.range(1), state.range(2)}, options).eta);
  }
}
BENCHMARK(BM_Row)->Args({-23, 5, 11})->Args({-23, 7, 43})->Args({-31, 13, 53})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
