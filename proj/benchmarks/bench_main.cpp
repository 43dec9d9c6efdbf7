#include "oscint/foi.hpp"
#include "oscint/kfoi.hpp"
#include "oscint/sep_vars.hpp"

#include <benchmark/benchmark.h>

using namespace oscint;

namespace {

const VarList XY = {"x", "y"};

WeightedJet dense(const VarList& v, int w, int max_deg) {
  WeightedJet f(v, w);
  long k = 1;
  for (const auto& e : foi::monomials_up_to(v.size(), max_deg)) f.add_term(e, 0, GQ::rational(k++, 7));
  return f;
}

void BM_JetMultiply(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  WeightedJet a = dense(XY, w, w), b = dense(XY, w, w);
  for (auto _ : state) benchmark::DoNotOptimize(multiply_full(a, b));
}
BENCHMARK(BM_JetMultiply)->Arg(6)->Arg(10)->Arg(14);

void BM_ConstructFoi(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int w = 2 * r + 8;
  WeightedJet phase = WeightedJet::monomial(XY, {2, 0}, -1, GQ(-1), w) +
                      WeightedJet::monomial(XY, {0, 2}, -1, GQ::rational(-1, 2), w) +
                      WeightedJet::monomial(XY, {2, 1}, -1, GQ::rational(1, 3), w) +
                      WeightedJet::monomial(XY, {0, 4}, -1, GQ::rational(-1, 5), w);
  foi::PhasePair p = foi::PhasePair::flat_density(phase);
  for (auto _ : state) benchmark::DoNotOptimize(foi::construct_foi(p, r));
}
BENCHMARK(BM_ConstructFoi)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_StarProduct(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const VarList z = sep::chart_variables(1);
  WeightedJet phi = WeightedJet::monomial(z, {1, 1}, -1, GQ(1), w) +
                    WeightedJet::monomial(z, {2, 2}, -1, GQ::rational(1, 3), w);
  WeightedJet f = dense(z, w, 3), g = dense(z, w, 3);
  for (auto _ : state) {
    // fresh product each iteration so the operator cache is part of the cost
    sep::StarProduct sp{sep::KahlerPotential(phi)};
    benchmark::DoNotOptimize(sp.star(f, g));
  }
}
BENCHMARK(BM_StarProduct)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_KEvaluation(benchmark::State& state) {
  const std::size_t l = static_cast<std::size_t>(state.range(0));
  const VarList z = sep::chart_variables(1);
  sep::StarProduct sp{sep::KahlerPotential(WeightedJet::monomial(z, {1, 1}, -1, GQ(1), 24))};
  std::vector<WeightedJet> fs(l, dense(z, 12, 2));
  for (auto _ : state) benchmark::DoNotOptimize(kfoi::kl_apply(sp, fs, 3));
}
BENCHMARK(BM_KEvaluation)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
