#include <cmath>
#include <vector>

#include "lacs/transforms.hpp"

namespace lacs {
namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Column-major storage seen as doubles: `ld` doubles per column, a complex
// entry is two consecutive doubles, so a column head of m entries is `len`
// = m * width doubles and every update is a real axpy.
struct Block {
  double* data;
  Eigen::Index ld;
  Eigen::Index len;

  Eigen::Map<Eigen::VectorXd> col(int c) const { return {data + c * ld, len}; }
};

// One filter-bank level along the column index of the leading m x m block:
// output column i mixes input columns 2i .. 2i+taps-1 (periodic).
void analyze(const std::vector<double>& lo, const std::vector<double>& hi, const Block& x, const Block& tmp, int m) {
  const int half = m / 2;
  const int taps = static_cast<int>(lo.size());
  for (int i = 0; i < half; ++i) {
    auto a = tmp.col(i);
    auto d = tmp.col(half + i);
    a.setZero();
    d.setZero();
    for (int k = 0; k < taps; ++k) {
      const auto src = x.col((2 * i + k) % m);
      a += lo[static_cast<std::size_t>(k)] * src;
      d += hi[static_cast<std::size_t>(k)] * src;
    }
  }
  for (int c = 0; c < m; ++c) x.col(c) = tmp.col(c);
}

void synthesize(const std::vector<double>& lo, const std::vector<double>& hi, const Block& x, const Block& tmp,
                int m) {
  const int half = m / 2;
  const int taps = static_cast<int>(lo.size());
  for (int c = 0; c < m; ++c) tmp.col(c).setZero();
  for (int i = 0; i < half; ++i) {
    const auto a = x.col(i);
    const auto d = x.col(half + i);
    for (int k = 0; k < taps; ++k) {
      tmp.col((2 * i + k) % m) += lo[static_cast<std::size_t>(k)] * a + hi[static_cast<std::size_t>(k)] * d;
    }
  }
  for (int c = 0; c < m; ++c) x.col(c) = tmp.col(c);
}

template <typename Matrix>
Matrix transform2d(const std::vector<double>& lo, const std::vector<double>& hi, const Matrix& src,
                   bool forward) {
  const Eigen::Index n = src.rows();
  if (src.cols() != n) throw Error(ErrorCode::NonSquareImage, "wavelet transform needs a square grid");
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::NonPowerOfTwoSize, "wavelet grid size " + std::to_string(n));
  }
  constexpr int width = static_cast<int>(sizeof(typename Matrix::Scalar) / sizeof(double));
  Matrix out = src;
  Matrix tmp(n, n);
  Matrix flipped(n, n);
  auto block = [&](Matrix& m, int size) {
    return Block{reinterpret_cast<double*>(m.data()), n * width, static_cast<Eigen::Index>(size) * width};
  };

  // Filtering along rows acts on the column index directly; filtering along
  // columns goes through the transposed block.
  auto along_rows = [&](int m) {
    forward ? analyze(lo, hi, block(out, m), block(tmp, m), m) : synthesize(lo, hi, block(out, m), block(tmp, m), m);
  };
  auto along_cols = [&](int m) {
    flipped.topLeftCorner(m, m) = out.topLeftCorner(m, m).transpose();
    forward ? analyze(lo, hi, block(flipped, m), block(tmp, m), m)
            : synthesize(lo, hi, block(flipped, m), block(tmp, m), m);
    out.topLeftCorner(m, m) = flipped.topLeftCorner(m, m).transpose();
  };

  if (forward) {
    for (int m = static_cast<int>(n); m >= 2; m /= 2) {
      along_rows(m);
      along_cols(m);
    }
  } else {
    for (int m = 2; m <= n; m *= 2) {
      along_cols(m);
      along_rows(m);
    }
  }
  return out;
}

}  // namespace

Wavelet::Wavelet(WaveletFamily family) : family_(family) {
  if (family == WaveletFamily::Haar) {
    const double s = 1.0 / std::sqrt(2.0);
    lo_ = {s, s};
  } else {
    const double s3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    lo_ = {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
  }
  const std::size_t taps = lo_.size();
  hi_.resize(taps);
  for (std::size_t k = 0; k < taps; ++k) {
    hi_[k] = (k % 2 == 0 ? 1.0 : -1.0) * lo_[taps - 1 - k];
  }
}

RealMatrix Wavelet::forward(const RealMatrix& img) const { return transform2d(lo_, hi_, img, true); }
RealMatrix Wavelet::inverse(const RealMatrix& coeffs) const { return transform2d(lo_, hi_, coeffs, false); }
ComplexMatrix Wavelet::forward(const ComplexMatrix& img) const { return transform2d(lo_, hi_, img, true); }
ComplexMatrix Wavelet::inverse(const ComplexMatrix& coeffs) const {
  return transform2d(lo_, hi_, coeffs, false);
}

RealMatrix wavelet_fwd(const Image& img, WaveletFamily family) { return Wavelet(family).forward(img.pixels()); }

Image wavelet_inv(const RealMatrix& coeffs, WaveletFamily family) {
  return Image(Wavelet(family).inverse(coeffs));
}

}  // namespace lacs
