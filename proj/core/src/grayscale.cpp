#include <cmath>

#include "lacs/grayscale.hpp"

namespace lacs {

ScaleEstimate gsc_update(const Measurements& y, const Measurements& y0, ScaleEstimate est,
                         const GscOptions& options) {
  if (y.lines != y0.lines || y.rows.rows() != y0.rows.rows() || y.rows.cols() != y0.rows.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "follow-up and reference lines differ");
  }
  if (!(y0.rows.cwiseAbs().sum() > 0.0)) throw Error(ErrorCode::ZeroReferenceEnergy, "reference lines are zero");

  double c_new = 0.0;
  if (options.modulus_sum) {
    c_new = y.rows.cwiseAbs().sum() / y0.rows.cwiseAbs().sum();
  } else {
    const Complex ratio = y.rows.sum() / y0.rows.sum();
    if (std::abs(ratio.imag()) > 0.01 * std::abs(ratio)) ++est.imaginary_warnings;
    c_new = ratio.real();
  }
  if (!std::isfinite(c_new)) return est;

  const int i = est.rounds_seen + 1;
  est.c = c_new / i + est.c * (i - 1) / i;
  est.rounds_seen = i;
  return est;
}

}  // namespace lacs
