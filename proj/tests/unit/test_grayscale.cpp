#include <doctest.h>

#include "lacs/grayscale.hpp"
#include "oracles.hpp"

using namespace lacs;

namespace {

Measurements lines_of(const ComplexMatrix& kspace, std::vector<int> lines) { return measure_kspace(kspace, lines); }

}  // namespace

TEST_CASE("exact linear model is recovered in one round") {
  std::mt19937_64 rng(31);
  const ComplexMatrix k0 = fft2c(oracle::random_real(16, rng).cast<Complex>());
  const Measurements y0 = lines_of(k0, {-2, 0, 5});
  for (double c : {2.0, 0.5, 1.7}) {
    const Measurements y = lines_of(ComplexMatrix(c * k0), {-2, 0, 5});
    const ScaleEstimate est = gsc_update(y, y0, ScaleEstimate{});
    CHECK(std::abs(est.c - c) <= 1e-6);
    CHECK(est.rounds_seen == 1);
    CHECK(est.imaginary_warnings == 0);
    GscOptions modulus;
    modulus.modulus_sum = true;
    CHECK(std::abs(gsc_update(y, y0, ScaleEstimate{}, modulus).c - c) <= 1e-6);
  }
}

TEST_CASE("running mean arithmetic") {
  std::mt19937_64 rng(32);
  const ComplexMatrix k0 = fft2c(oracle::random_real(8, rng).cast<Complex>());
  const Measurements y0 = lines_of(k0, {0});
  const Measurements y = lines_of(ComplexMatrix(2.0 * k0), {0});
  ScaleEstimate prior;
  prior.c = 1.5;
  prior.rounds_seen = 1;
  CHECK(gsc_update(y, y0, prior).c == doctest::Approx(1.75));

  ScaleEstimate same;
  for (int i = 0; i < 4; ++i) {
    same = gsc_update(y0, y0, same);
    CHECK(same.c == doctest::Approx(1.0));
  }
  CHECK(same.rounds_seen == 4);
}

TEST_CASE("gsc failure modes") {
  std::mt19937_64 rng(33);
  const ComplexMatrix k0 = fft2c(oracle::random_real(8, rng).cast<Complex>());
  const Measurements zero = lines_of(ComplexMatrix::Zero(8, 8), {0, 1});
  CHECK_THROWS_AS(gsc_update(lines_of(k0, {0, 1}), zero, ScaleEstimate{}), Error);
  CHECK_THROWS_AS(gsc_update(lines_of(k0, {0, 1}), lines_of(k0, {0, 2}), ScaleEstimate{}), Error);

  // A rotated follow-up makes the ratio complex: the warning counter moves.
  const Measurements y0 = lines_of(k0, {0});
  const Measurements rotated = lines_of(ComplexMatrix(Complex(0, 1) * k0), {0});
  const ScaleEstimate est = gsc_update(rotated, y0, ScaleEstimate{});
  CHECK(est.imaginary_warnings == 1);
  CHECK(std::abs(est.c) < 1e-12);
}
