#include <benchmark/benchmark.h>

#include "macpoly/affine.hpp"
#include "macpoly/elliptic.hpp"
#include "macpoly/jacobi.hpp"
#include "macpoly/kz.hpp"
#include "macpoly/macdonald.hpp"

using namespace macpoly;

namespace {

// Results are memoized per process; clear between iterations to time a cold computation.
void BM_MacdonaldGeneric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rd = RootData::build_a_type(n);
  const Partition lam = n == 2 ? Partition{4, 0} : Partition{2, 1, 0};
  for (auto _ : state) {
    clear_macdonald_caches();
    benchmark::DoNotOptimize(macdonald_poly(rd, lam, MacMode::generic_t()));
  }
}
BENCHMARK(BM_MacdonaldGeneric)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MacdonaldSpecialized(benchmark::State& state) {
  const auto rd = RootData::build_a_type(4);
  for (auto _ : state) {
    clear_macdonald_caches();
    benchmark::DoNotOptimize(macdonald_poly(rd, {3, 2, 0, 0}, MacMode::t_eq_qk(2)));
  }
}
BENCHMARK(BM_MacdonaldSpecialized)->Unit(benchmark::kMillisecond);

void BM_NormIdentity(benchmark::State& state) {
  const auto rd = RootData::build_a_type(3);
  for (auto _ : state) {
    clear_macdonald_caches();
    benchmark::DoNotOptimize(verify_norm(rd, {3, 1, 0}, 3));
  }
}
BENCHMARK(BM_NormIdentity)->Unit(benchmark::kMillisecond);

void BM_JackFormal(benchmark::State& state) {
  const auto rd = RootData::build_a_type(3);
  const Weight lam = Weight::from_partition({4, 2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_poly(rd, lam, JacobiK::symbolic()));
}
BENCHMARK(BM_JackFormal)->Unit(benchmark::kMillisecond);

void BM_AffineJacobi(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto rd = RootData::build_a_type(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(affine_jacobi(rd, rd.fundamental_weight(1), 1, JacobiK::fixed(2), N));
}
BENCHMARK(BM_AffineJacobi)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_WeylKac(benchmark::State& state) {
  const auto rd = RootData::build_a_type(3);
  for (auto _ : state) benchmark::DoNotOptimize(weyl_kac_character(rd, Weight::zero(3), 1, 8));
}
BENCHMARK(BM_WeylKac)->Unit(benchmark::kMillisecond);

void BM_HarmonicDenominator(benchmark::State& state) {
  const auto rd = RootData::build_a_type(3);
  for (auto _ : state) benchmark::DoNotOptimize(affine_laplacian(normalized_denominator(rd, 12)));
}
BENCHMARK(BM_HarmonicDenominator)->Unit(benchmark::kMillisecond);

void BM_Theta1(benchmark::State& state) {
  const EllipticContext ctx(cplx(0.1, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(theta1(cplx(0.3, 0.1), ctx));
}
BENCHMARK(BM_Theta1);

void BM_G(benchmark::State& state) {
  const EllipticContext ctx(cplx(0.0, 0.8));
  for (auto _ : state) benchmark::DoNotOptimize(g(cplx(0.3, 0.1), cplx(0.2, 0.0), ctx));
}
BENCHMARK(BM_G);

void BM_FlatnessThreePoints(benchmark::State& state) {
  const TensorSpace V(2, {defining_rep(2), defining_rep(2), symmetric_power(2, 2)});
  const EllipticContext ctx(cplx(0.0, 1.1));
  const std::vector<cplx> z = {cplx(0.1, 0.05), cplx(0.37, -0.1), cplx(0.7, 0.2)};
  const std::vector<cplx> h = {cplx(0.13, 0.05), cplx(-0.13, -0.05)};
  for (auto _ : state) benchmark::DoNotOptimize(flatness_check(V, z, h, ctx, 1.7));
}
BENCHMARK(BM_FlatnessThreePoints)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
