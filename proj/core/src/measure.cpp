#include <algorithm>
#include <cmath>

#include "lacs/transforms.hpp"

namespace lacs {

void Measurements::append(const Measurements& more) {
  if (more.empty()) return;
  if (n == 0) n = more.n;
  if (more.n != n) throw Error(ErrorCode::DimensionMismatch, "measurement grids differ");
  ComplexMatrix merged(static_cast<Eigen::Index>(lines.size() + more.lines.size()), n);
  if (!lines.empty()) merged.topRows(static_cast<Eigen::Index>(lines.size())) = rows;
  merged.bottomRows(static_cast<Eigen::Index>(more.lines.size())) = more.rows;
  lines.insert(lines.end(), more.lines.begin(), more.lines.end());
  rows = std::move(merged);
}

Measurements measure_kspace(const ComplexMatrix& kspace, std::span<const int> lines) {
  const int n = static_cast<int>(kspace.rows());
  Measurements y;
  y.n = n;
  y.lines.assign(lines.begin(), lines.end());
  y.rows.resize(static_cast<Eigen::Index>(lines.size()), n);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int ky = lines[i];
    if (ky < min_line(n) || ky > max_line(n)) {
      throw Error(ErrorCode::InvalidLine, "line " + std::to_string(ky) + " outside grid");
    }
    y.rows.row(static_cast<Eigen::Index>(i)) = kspace.row(row_of_line(n, ky));
  }
  return y;
}

Measurements measure(const Image& img, const SamplingMask& mask) {
  if (mask.n() != img.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mask size " + std::to_string(mask.n()) +
                                                  " vs image size " + std::to_string(img.size()));
  }
  if (mask.empty()) {
    Measurements y;
    y.n = img.size();
    y.rows.resize(0, img.size());
    return y;
  }
  return measure_kspace(fft2_centered(img).grid(), mask.lines());
}

ComplexMatrix zero_filled(const Measurements& y) {
  ComplexMatrix k = ComplexMatrix::Zero(y.n, y.n);
  for (std::size_t i = 0; i < y.lines.size(); ++i) {
    k.row(row_of_line(y.n, y.lines[i])) = y.rows.row(static_cast<Eigen::Index>(i));
  }
  return ifft2c(k);
}

ComplexMatrix data_consistency(const ComplexMatrix& x, const Measurements& y) {
  ComplexMatrix k = fft2c(x);
  for (std::size_t i = 0; i < y.lines.size(); ++i) {
    k.row(row_of_line(y.n, y.lines[i])) = y.rows.row(static_cast<Eigen::Index>(i));
  }
  return ifft2c(k);
}

double data_residual(const ComplexMatrix& kspace_of_x, const Measurements& y) {
  double sq = 0.0;
  for (std::size_t i = 0; i < y.lines.size(); ++i) {
    sq += (kspace_of_x.row(row_of_line(y.n, y.lines[i])) - y.rows.row(static_cast<Eigen::Index>(i)))
              .squaredNorm();
  }
  return std::sqrt(sq);
}

}  // namespace lacs
