#include "lacs/transforms.hpp"

namespace lacs {
namespace {

template <typename Matrix>
BasicGradientPair<Matrix> forward_diff(const Matrix& x) {
  const Eigen::Index n = x.rows();
  BasicGradientPair<Matrix> g{Matrix(n, x.cols()), Matrix(n, x.cols())};
  if (n == 0) return g;
  g.dx.topRows(n - 1) = x.topRows(n - 1) - x.bottomRows(n - 1);
  g.dx.row(n - 1) = x.row(n - 1);
  const Eigen::Index m = x.cols();
  g.dy.leftCols(m - 1) = x.leftCols(m - 1) - x.rightCols(m - 1);
  g.dy.col(m - 1) = x.col(m - 1);
  return g;
}

// G^T dx + dy G
template <typename Matrix>
Matrix adjoint_diff(const Matrix& dx, const Matrix& dy) {
  const Eigen::Index n = dx.rows();
  const Eigen::Index m = dx.cols();
  Matrix out = dx + dy;
  if (n > 1) out.bottomRows(n - 1) -= dx.topRows(n - 1);
  if (m > 1) out.rightCols(m - 1) -= dy.leftCols(m - 1);
  return out;
}

}  // namespace

GradientPair gradient_fwd(const Image& img) { return forward_diff(img.pixels()); }

Image gradient_adjoint(const GradientPair& gp) {
  if (gp.dx.rows() != gp.dy.rows() || gp.dx.cols() != gp.dy.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "dx and dy shapes differ");
  }
  return Image(adjoint_diff(gp.dx, gp.dy));
}

ComplexMatrix gradient_stacked(const ComplexMatrix& x) {
  const Eigen::Index n = x.rows();
  auto g = forward_diff(x);
  ComplexMatrix out(2 * n, x.cols());
  out.topRows(n) = g.dx;
  out.bottomRows(n) = g.dy;
  return out;
}

ComplexMatrix gradient_stacked_adjoint(const ComplexMatrix& g) {
  const Eigen::Index n = g.rows() / 2;
  if (g.rows() != 2 * n || g.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "stacked gradient must be 2n x n");
  }
  return adjoint_diff<ComplexMatrix>(g.topRows(n), g.bottomRows(n));
}

RealMatrix gradient_matrix(int n) {
  RealMatrix G = RealMatrix::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) G(i, i + 1) = -1.0;
  return G;
}

}  // namespace lacs
