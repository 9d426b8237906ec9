#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lacs/config.hpp"
#include "lacs/types.hpp"

namespace lacs {

// ---------------------------------------------------------------------------
// Centered unitary 2D DFT. Both the spatial and the frequency origin sit at
// index n/2, so F = fftshift . fft2 . ifftshift scaled by 1/n.

ComplexMatrix fft2c(const ComplexMatrix& image);
ComplexMatrix ifft2c(const ComplexMatrix& kspace);

/// Throws NonSquareImage for non-square input (Image already guarantees it).
KSpace fft2_centered(const Image& img);
ComplexMatrix ifft2_centered(const KSpace& k);

// ---------------------------------------------------------------------------
// Subsampled Fourier operator F_u.

/// Measured phase-encode lines: row i of `rows` holds line `lines[i]`.
struct Measurements {
  int n = 0;
  std::vector<int> lines;
  ComplexMatrix rows;

  bool empty() const noexcept { return lines.empty(); }
  SamplingMask mask() const { return SamplingMask(n, lines); }
  void append(const Measurements& more);
};

Measurements measure(const Image& img, const SamplingMask& mask);
Measurements measure_kspace(const ComplexMatrix& kspace, std::span<const int> lines);

/// Zero-filled inverse: F^-1 of the measured lines with zeros elsewhere.
ComplexMatrix zero_filled(const Measurements& y);

/// Replace the measured lines of F x with y and transform back.
ComplexMatrix data_consistency(const ComplexMatrix& x, const Measurements& y);

/// ||F_u x - y||_2 for an estimate whose spectrum is already known.
double data_residual(const ComplexMatrix& kspace_of_x, const Measurements& y);

// ---------------------------------------------------------------------------
// Orthonormal periodic wavelet transform, full depth (down to a 1x1
// approximation). Coefficients use the usual Mallat layout.

class Wavelet {
 public:
  explicit Wavelet(WaveletFamily family = WaveletFamily::Daubechies4);

  WaveletFamily family() const noexcept { return family_; }

  RealMatrix forward(const RealMatrix& img) const;
  RealMatrix inverse(const RealMatrix& coeffs) const;
  ComplexMatrix forward(const ComplexMatrix& img) const;
  ComplexMatrix inverse(const ComplexMatrix& coeffs) const;

 private:
  WaveletFamily family_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

RealMatrix wavelet_fwd(const Image& img, WaveletFamily family = WaveletFamily::Daubechies4);
Image wavelet_inv(const RealMatrix& coeffs, WaveletFamily family = WaveletFamily::Daubechies4);

// ---------------------------------------------------------------------------
// Discrete gradient with the raw-value boundary: with G the upper bidiagonal
// matrix (1 on the diagonal, -1 above it),
//   dx = G X      dx(j,k) = X(j,k) - X(j+1,k),  dx(n-1,k) = X(n-1,k)
//   dy = X G^T    dy(j,k) = X(j,k) - X(j,k+1),  dy(j,n-1) = X(j,n-1)

template <typename Matrix>
struct BasicGradientPair {
  Matrix dx;
  Matrix dy;
};

using GradientPair = BasicGradientPair<RealMatrix>;

GradientPair gradient_fwd(const Image& img);
/// Adjoint of gradient_fwd: G^T dx + dy G. Throws DimensionMismatch.
Image gradient_adjoint(const GradientPair& gp);

ComplexMatrix gradient_stacked(const ComplexMatrix& x);          // [dx; dy], 2n x n
ComplexMatrix gradient_stacked_adjoint(const ComplexMatrix& g);  // inverse layout

/// Dense G for oracle checks.
RealMatrix gradient_matrix(int n);

// ---------------------------------------------------------------------------
// Sparsifying operator Psi used by the solvers. Coefficients of an n x n
// image are an (rows_factor * n) x n matrix.

class Sparsifier {
 public:
  Sparsifier(SparsifierKind kind, WaveletFamily family = WaveletFamily::Daubechies4)
      : kind_(kind), wavelet_(family) {}

  SparsifierKind kind() const noexcept { return kind_; }
  const Wavelet& wavelet() const noexcept { return wavelet_; }
  bool orthonormal() const noexcept { return kind_ == SparsifierKind::Wavelet; }
  int rows_factor() const noexcept { return kind_ == SparsifierKind::Wavelet ? 1 : 2; }
  /// Upper bound on ||Psi||^2.
  double norm_squared_bound() const noexcept { return kind_ == SparsifierKind::Wavelet ? 1.0 : 8.0; }

  ComplexMatrix forward(const ComplexMatrix& x) const;
  ComplexMatrix adjoint(const ComplexMatrix& coeffs) const;

  /// Image whose analysis coefficients reproduce a unit coefficient at
  /// (row, col): the inverse wavelet atom, or for the gradient the
  /// preimage under the corresponding difference operator.
  RealMatrix synthesis_atom(int n, int row, int col) const;

 private:
  SparsifierKind kind_;
  Wavelet wavelet_;
};

}  // namespace lacs
