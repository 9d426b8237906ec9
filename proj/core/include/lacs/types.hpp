#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lacs/error.hpp"

namespace lacs {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

// Centered line index k_y in {-n/2, ..., n/2 - 1} maps to storage row k_y + n/2.
inline int row_of_line(int n, int ky) { return ky + n / 2; }
inline int line_of_row(int n, int row) { return row - n / 2; }
inline int min_line(int n) { return -(n / 2); }
inline int max_line(int n) { return n - n / 2 - 1; }

/// Real-valued square pixel grid. Intensities are kept at whatever scale the
/// caller supplies; nothing here normalizes them.
class Image {
 public:
  Image() = default;
  explicit Image(RealMatrix pixels);
  static Image zeros(int n);
  static Image constant(int n, double value);

  int size() const noexcept { return static_cast<int>(pixels_.rows()); }
  const RealMatrix& pixels() const noexcept { return pixels_; }
  double operator()(int row, int col) const { return pixels_(row, col); }

  ComplexMatrix as_complex() const { return pixels_.cast<Complex>(); }
  double norm() const { return pixels_.norm(); }

 private:
  RealMatrix pixels_;
};

/// Complex n x n k-space grid in centered frequency coordinates.
class KSpace {
 public:
  KSpace() = default;
  explicit KSpace(ComplexMatrix grid);

  int size() const noexcept { return static_cast<int>(grid_.rows()); }
  const ComplexMatrix& grid() const noexcept { return grid_; }

  Complex at(int ky, int kx) const {
    return grid_(row_of_line(size(), ky), row_of_line(size(), kx));
  }
  auto line(int ky) const { return grid_.row(row_of_line(size(), ky)); }

 private:
  ComplexMatrix grid_;
};

/// Set of acquired phase-encode lines, kept sorted.
class SamplingMask {
 public:
  explicit SamplingMask(int n = 0) : n_(n) {}
  SamplingMask(int n, std::vector<int> lines);
  static SamplingMask full(int n);

  int n() const noexcept { return n_; }
  const std::vector<int>& lines() const noexcept { return lines_; }
  std::size_t size() const noexcept { return lines_.size(); }
  bool empty() const noexcept { return lines_.empty(); }
  bool contains(int ky) const;

  void add(int ky);
  void add(std::span<const int> lines);

 private:
  int n_ = 0;
  std::vector<int> lines_;
};

/// Discrete probability density over the n centered line indices.
class LinePdf {
 public:
  LinePdf() = default;
  // Normalizes `weights` (indexed by storage row). Throws InvalidPdf when the
  // weights are negative, non-finite or all zero.
  static LinePdf from_weights(std::vector<double> weights);
  static LinePdf uniform(int n);
  // Takes probabilities as given; throws InvalidPdf unless they are >= 0 and
  // sum to 1 within 1e-9.
  static LinePdf from_probabilities(std::vector<double> prob);

  int n() const noexcept { return static_cast<int>(prob_.size()); }
  const std::vector<double>& probabilities() const noexcept { return prob_; }
  double at(int ky) const { return prob_[static_cast<std::size_t>(row_of_line(n(), ky))]; }
  double at_row(int row) const { return prob_[static_cast<std::size_t>(row)]; }
  double sum() const;

 private:
  explicit LinePdf(std::vector<double> prob) : prob_(std::move(prob)) {}
  std::vector<double> prob_;
};

}  // namespace lacs
