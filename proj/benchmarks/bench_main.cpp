#include <benchmark/benchmark.h>

#include <random>

#include "lacs/bench.hpp"

namespace {

lacs::ComplexMatrix random_image(int n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  lacs::ComplexMatrix x(n, n);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = d(rng);
  return x;
}

void BM_fft2c(benchmark::State& state) {
  const auto x = random_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lacs::fft2c(x));
}
BENCHMARK(BM_fft2c)->Arg(32)->Arg(64)->Arg(256);

void BM_wavelet_roundtrip(benchmark::State& state) {
  const auto x = random_image(static_cast<int>(state.range(0)));
  const lacs::Wavelet w;
  for (auto _ : state) benchmark::DoNotOptimize(w.inverse(w.forward(x)));
}
BENCHMARK(BM_wavelet_roundtrip)->Arg(32)->Arg(64)->Arg(256);

void BM_gradient_roundtrip(benchmark::State& state) {
  const auto x = random_image(static_cast<int>(state.range(0)));
  const lacs::Sparsifier g(lacs::SparsifierKind::Gradient);
  for (auto _ : state) benchmark::DoNotOptimize(g.adjoint(g.forward(x)));
}
BENCHMARK(BM_gradient_roundtrip)->Arg(32)->Arg(64)->Arg(256);

void BM_solve_weighted(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto images = lacs::brain_standin(n);
  const lacs::Sparsifier psi(lacs::SparsifierKind::Wavelet);
  std::vector<int> lines;
  for (int ky = -3; ky < 3; ++ky) lines.push_back(ky);
  const auto y = lacs::measure(images.followup, lacs::SamplingMask(n, lines));
  const auto x0 = images.reference.as_complex();
  const auto w = lacs::update_weights(lacs::zero_filled(y), x0, psi, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(lacs::solve_weighted(y, x0, w, psi));
}
BENCHMARK(BM_solve_weighted)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_pdf_a(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto images = lacs::brain_standin(n);
  const lacs::Sparsifier psi(lacs::SparsifierKind::Wavelet);
  const auto support = lacs::reference_support(images.reference, psi, lacs::default_support_size(n, 0.05));
  for (auto _ : state) benchmark::DoNotOptimize(lacs::pdf_a(n, psi, support, 2.0 * n));
}
BENCHMARK(BM_pdf_a)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_lacs_round(benchmark::State& state) {
  lacs::PhantomSpec spec;
  spec.tumor = lacs::PhantomSpec::default_tumor(32);
  const auto images = lacs::shepp_logan(spec);
  lacs::ExperimentConfig cfg;
  cfg.trials = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lacs::run_case(1, images, cfg));
}
BENCHMARK(BM_lacs_round)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
