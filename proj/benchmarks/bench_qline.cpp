#include "qline/exprparse.hpp"
#include "qline/geometry.hpp"
#include "qline/oscillator.hpp"
#include "qline/repspace.hpp"

#include <benchmark/benchmark.h>

using namespace qline;

namespace {

// Alternating Lambda, x and d1 factors, the worst case for reordering.
Word mixed_word(long n) {
  Word w;
  const Gen cycle[3] = {Gen::D1, Gen::X, Gen::Lambda};
  for (long i = 0; i < n; ++i) w.push_back({cycle[i % 3], (cycle[i % 3] == Gen::D1 || i % 2) ? 1 : -1});
  return w;
}

void BM_NormalOrder(benchmark::State& st) {
  Algebra alg(BigRat(3, 2));
  Word w = mixed_word(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(alg.normal_order(w));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_NormalOrder)->RangeMultiplier(2)->Range(3, 24)->Complexity();

void BM_RepOfWord(benchmark::State& st) {
  Params p;
  Window w = Window::make(-st.range(0), st.range(0), Boundary::Open, p.q, Units::Planck);
  Word word = mixed_word(6);
  for (auto _ : st) benchmark::DoNotOptimize(rep_of_word(word, w, p));
  st.SetComplexityN(2 * st.range(0) + 1);
}
BENCHMARK(BM_RepOfWord)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_ParseEvaluate(benchmark::State& st) {
  Algebra alg(BigRat(2));
  const std::string text = "e1(x^3*L^-2) + star(x*L)^2 - 3/4*x*L*d1 + eb1(x^-1*L^2)";
  for (auto _ : st) benchmark::DoNotOptimize(expr::evaluate(expr::parse(text), alg));
}
BENCHMARK(BM_ParseEvaluate);

void BM_LocalDistance(benchmark::State& st) {
  Params p;
  Algebra alg(p);
  Window w = Window::make(-24, 24, Boundary::Open, p.q, Units::Planck);
  for (auto _ : st) benchmark::DoNotOptimize(distance(alg, MetricSpec::local_real(), 0, w));
}
BENCHMARK(BM_LocalDistance);

void BM_OscillatorPoint(benchmark::State& st) {
  const double z = 1.0 / st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(oscillator_point(z, default_halfwidth(z)));
}
BENCHMARK(BM_OscillatorPoint)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
