#include <benchmark/benchmark.h>

#include "sseq/coalgebra_tools.hpp"
#include "sseq/corpus.hpp"
#include "sseq/serre.hpp"

using namespace sseq;

namespace {

Field field_arg(std::int64_t i) {
  switch (i) {
    case 0: return Field::prime(2);
    case 1: return Field::prime(3);
    default: return Field::rationals();
  }
}

void BM_Rref(benchmark::State& state) {
  Field f = field_arg(state.range(1));
  auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    Vector v(f, n);
    for (std::size_t i = 0; i < n; ++i)
      if ((i * 7 + j * 13) % 5 < 2) v.set(i, Scalar(f, static_cast<long long>((i + 2 * j) % 11) + 1));
    cols.push_back(v);
  }
  Matrix m = Matrix::from_columns(f, n, cols);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rref)->ArgsProduct({{16, 64, 128}, {0, 2}});

void BM_Shuffles(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_simple(n, n));
}
BENCHMARK(BM_Shuffles)->DenseRange(2, 6, 2);

void BM_ProductSerre(benchmark::State& state) {
  Field f = field_arg(state.range(1));
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SerreFiltration sf = serre_filtration(product_fibration(sphere_set(1), sphere_set(n)), f);
    CoalgebraSpectralSequence css(sf.coalgebra);
    benchmark::DoNotOptimize(css.page_with_comult(2));
  }
}
BENCHMARK(BM_ProductSerre)->ArgsProduct({{2, 3, 4}, {0, 2}})->Unit(benchmark::kMillisecond);

void BM_E2Identify(benchmark::State& state) {
  SerreFiltration sf = serre_filtration(product_fibration(sphere_set(1), sphere_set(3)), Field::rationals());
  for (auto _ : state) benchmark::DoNotOptimize(e2_identify(sf).passes());
}
BENCHMARK(BM_E2Identify)->Unit(benchmark::kMillisecond);

void BM_CoLeibnizCorpus(benchmark::State& state) {
  auto members = skeletal_corpus(static_cast<std::size_t>(state.range(0)), 1, {Field::prime(3)});
  for (auto _ : state)
    for (const auto& m : members) {
      CoalgebraSpectralSequence css(m.coalgebra);
      for (int r = 0; r <= 4; ++r) benchmark::DoNotOptimize(css.check_co_leibniz(r).passes());
    }
}
BENCHMARK(BM_CoLeibnizCorpus)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Cofree(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto c = cofree(GeneratorSpec::odd_up_to(n), Field::rationals());
    benchmark::DoNotOptimize(primitives(c).dim());
  }
}
BENCHMARK(BM_Cofree)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
