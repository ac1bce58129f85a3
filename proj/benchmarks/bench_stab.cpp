#include <benchmark/benchmark.h>

#include <random>

#include "stab/corpus.hpp"
#include "stab/oracle.hpp"
#include "stab/rectify.hpp"
#include "stab/spectra.hpp"
#include "stab/symmetric.hpp"

using namespace stab;

namespace {

void BM_MatrixProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const Matrix a = random_matrix(3, n, n, rng), b = random_matrix(3, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MatrixProduct)->Arg(32)->Arg(128)->Arg(256);

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const Matrix a = random_matrix(2, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(a));
}
BENCHMARK(BM_Rank)->Arg(32)->Arg(128)->Arg(256);

void BM_Homology(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const ChainComplex c = random_complex(3, rng, {4, 3});
  const ChainComplex t = tensor(c, c);
  for (auto _ : state) benchmark::DoNotOptimize(homology_dims(t, t.top()));
}
BENCHMARK(BM_Homology);

void BM_StablePi(benchmark::State& state) {
  const auto corpus = spectrum_corpus(2, {});
  for (auto _ : state) {
    for (const auto& x : corpus) benchmark::DoNotOptimize(stable_pi(x.value, 1));
  }
}
BENCHMARK(BM_StablePi);

void BM_RInfinity(benchmark::State& state) {
  const auto corpus = spectrum_corpus(3, {});
  for (auto _ : state) {
    for (const auto& x : corpus) benchmark::DoNotOptimize(R_infinity(x.value));
  }
}
BENCHMARK(BM_RInfinity);

void BM_Smash(benchmark::State& state) {
  const auto k = ChainComplex::sphere(2, 1);
  const int h = static_cast<int>(state.range(0));
  const auto x = free_sym(1, ChainComplex::unit(2), k, h);
  const auto y = sym_K(k, h);
  for (auto _ : state) benchmark::DoNotOptimize(smash(x, y));
}
BENCHMARK(BM_Smash)->Arg(2)->Arg(3)->Arg(4);

void BM_CompareTensorings(benchmark::State& state) {
  const auto k = ChainComplex::sphere(2, 1);
  const auto cert = certify_symmetric(k);
  const auto x = *builtin_spectrum("cone", 2);
  const int top = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compare_tensorings(x, *cert, top));
}
BENCHMARK(BM_CompareTensorings)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LiftingOracle(benchmark::State& state) {
  const auto k = ChainComplex::sphere(2, 1);
  const auto s = ChainComplex::unit(2);
  const auto f = SymMap::zero(SymmetricSpectrum::zero(k, 2), free_sym(1, s, k, 2));
  for (auto _ : state) benchmark::DoNotOptimize(lifting_oracle(f));
}
BENCHMARK(BM_LiftingOracle);

}  // namespace

BENCHMARK_MAIN();
