#include <cmath>

#include "lacs/bench.hpp"

namespace lacs {

double rsnr(const Image& x_true, const Image& x_hat, double cap_db) {
  if (x_true.size() != x_hat.size()) throw Error(ErrorCode::DimensionMismatch, "images differ in size");
  const double signal = x_true.norm();
  if (!(signal > 0.0)) throw Error(ErrorCode::ZeroTruth, "ground truth has zero norm");
  const double error = (x_true.pixels() - x_hat.pixels()).norm();
  if (error == 0.0) return cap_db;
  return std::min(cap_db, 20.0 * std::log10(signal / error));
}

}  // namespace lacs
