#include <benchmark/benchmark.h>

#include <random>

#include "weylchar/charformula.hpp"
#include "weylchar/finite_groups.hpp"
#include "weylchar/fourier.hpp"

using namespace weylchar;

namespace {

FiniteGroup symmetric(int n) {
  std::vector<int> cycle(static_cast<std::size_t>(n));
  std::vector<int> swap(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
    swap[static_cast<std::size_t>(i)] = i;
  }
  std::swap(swap[0], swap[1]);
  return FiniteGroup::from_permutations({cycle, swap});
}

void BM_CyclotomicProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Cyclotomic a = Cyclotomic::root_of_unity(n) + Cyclotomic(make_rational(1, 3));
  const Cyclotomic b = Cyclotomic::root_of_unity(n, 3) - Cyclotomic(2);
  for (auto _ : state) {
    Cyclotomic c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CyclotomicProduct)->Arg(3)->Arg(12)->Arg(60);

void BM_CharacterTableSymmetric(benchmark::State& state) {
  const FiniteGroup g = symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(character_table(g));
  state.SetLabel("order " + std::to_string(g.order()));
}
BENCHMARK(BM_CharacterTableSymmetric)->DenseRange(3, 5)->Unit(benchmark::kMicrosecond);

void BM_CharacterTableCyclic(benchmark::State& state) {
  const FiniteGroup g = FiniteGroup::cyclic(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(character_table(g));
}
BENCHMARK(BM_CharacterTableCyclic)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);

void BM_FourierMatrix(benchmark::State& state) {
  const MSet m = MSet::build(symmetric(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_matrix(m));
  state.SetLabel(std::to_string(m.size()) + " pairs");
}
BENCHMARK(BM_FourierMatrix)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_Length(benchmark::State& state) {
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  std::mt19937 rng(1);
  std::vector<WeylElement> sample;
  for (int k = 0; k < 256; ++k) {
    Word w(24);
    for (auto& s : w) s = static_cast<int>(rng() % 3);
    sample.push_back(g2.from_word(w));
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(g2.length(sample[k++ % sample.size()]));
}
BENCHMARK(BM_Length);

void BM_ReducedWord(benchmark::State& state) {
  const AffineDatum c2 = AffineDatum::builtin("c2aff");
  const WeylElement w = c2.from_word({0, 1, 2, 1, 0, 1, 2, 1, 0, 2, 1, 0, 1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(c2.reduced_word(w));
}
BENCHMARK(BM_ReducedWord);

void BM_FiniteOrderClasses(benchmark::State& state) {
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_finite_order_classes(g2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FiniteOrderClasses)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GoodCosets(benchmark::State& state) {
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  for (auto _ : state) benchmark::DoNotOptimize(g2.good_coset_reps(NodeSet{1}, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GoodCosets)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_VerifyG2(benchmark::State& state) {
  // S3 in the order e, (12), (13), (23), (123), (132)
  const FiniteGroup s3 = FiniteGroup::from_table({{0, 1, 2, 3, 4, 5},
                                                  {1, 0, 5, 4, 3, 2},
                                                  {2, 4, 0, 5, 1, 3},
                                                  {3, 5, 4, 0, 2, 1},
                                                  {4, 2, 3, 1, 5, 0},
                                                  {5, 3, 1, 2, 0, 4}});
  const MSet m = MSet::build(s3);
  const auto q = [](long n, long d) { return make_rational(n, d); };
  G2Expected e;
  e.columns = {"A", "A'", "A''", "A'''"};
  e.labels = {"V", "V'", "V''", "V'''", "S", "S'", "S''", "S'''"};
  e.rows = {{q(1, 6), q(1, 2), q(1, 3), q(1, 3)},  {q(1, 2), q(1, 2), 0, 0},
            {q(1, 3), 0, q(2, 3), q(-1, 3)},       {q(1, 3), 0, q(-1, 3), q(2, 3)},
            {q(1, 6), q(-1, 2), q(1, 3), q(1, 3)}, {q(1, 2), q(-1, 2), 0, 0},
            {q(1, 3), 0, q(-1, 3), q(-1, 3)},      {q(1, 3), 0, q(-1, 3), q(-1, 3)}};
  e.swappable = {"S''", "S'''"};
  for (auto _ : state) benchmark::DoNotOptimize(verify_g2(m, e));
}
BENCHMARK(BM_VerifyG2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
