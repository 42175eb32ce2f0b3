#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nodal/constructions/constructions.hpp"
#include "nodal/core/groebner.hpp"
#include "nodal/core/matrix.hpp"
#include "oracles.hpp"

namespace {

using namespace nodal;

// f together with its partials: the singular-locus ideal of a random surface.
std::vector<MultiPoly> singular_locus(std::uint64_t seed, int degree) {
  std::mt19937_64 rng(seed);
  const MultiPoly f = testing::random_poly(rng, 3, degree, 10);
  return {f, f.derive(0), f.derive(1), f.derive(2)};
}

void BM_GroebnerExact(benchmark::State& state) {
  const auto gens = singular_locus(11, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(groebner_basis(gens, {std::nullopt, std::nullopt}));
  }
}
BENCHMARK(BM_GroebnerExact)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GroebnerPrefiltered(benchmark::State& state) {
  const auto gens = singular_locus(11, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(groebner_basis(gens, {std::nullopt, kDefaultPrime}));
  }
}
BENCHMARK(BM_GroebnerPrefiltered)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MatRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  RatMatrix m(n, n + 3);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = testing::random_rat(rng, 9);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mat_rank(m));
}
BENCHMARK(BM_MatRank)->Arg(8)->Arg(16)->Arg(32);

void BM_MatRankFp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  RatMatrix m(n, n + 3);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = testing::random_rat(rng, 9);
  }
  const auto mp = *reduce_mod(m, kDefaultPrime);
  for (auto _ : state) benchmark::DoNotOptimize(mat_rank(mp));
}
BENCHMARK(BM_MatRankFp)->Arg(8)->Arg(16)->Arg(32);

void BM_WitnessCertify(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto w = cons::theorem42_witness(d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cons::certify_witness(w));
}
BENCHMARK(BM_WitnessCertify)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
