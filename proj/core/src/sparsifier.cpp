#include "lacs/transforms.hpp"

namespace lacs {

ComplexMatrix Sparsifier::forward(const ComplexMatrix& x) const {
  return kind_ == SparsifierKind::Wavelet ? wavelet_.forward(x) : gradient_stacked(x);
}

ComplexMatrix Sparsifier::adjoint(const ComplexMatrix& coeffs) const {
  return kind_ == SparsifierKind::Wavelet ? wavelet_.inverse(coeffs) : gradient_stacked_adjoint(coeffs);
}

RealMatrix Sparsifier::synthesis_atom(int n, int row, int col) const {
  if (kind_ == SparsifierKind::Wavelet) {
    RealMatrix unit = RealMatrix::Zero(n, n);
    unit(row, col) = 1.0;
    return wavelet_.inverse(unit);
  }
  // G is unit upper bidiagonal, so G^-1 is the upper triangle of ones: a
  // unit dx entry at (j, k) comes from ones in rows 0..j of column k, a unit
  // dy entry from ones in columns 0..k of row j.
  RealMatrix atom = RealMatrix::Zero(n, n);
  if (row < n) {
    atom.block(0, col, row + 1, 1).setOnes();
  } else {
    atom.block(row - n, 0, 1, col + 1).setOnes();
  }
  return atom;
}

}  // namespace lacs
