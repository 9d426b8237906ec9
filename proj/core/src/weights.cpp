#include "lacs/recon.hpp"

namespace lacs {

Weights Weights::initial(int n, const Sparsifier& psi) {
  return Weights{RealMatrix::Ones(psi.rows_factor() * n, n), RealMatrix::Zero(n, n)};
}

Weights update_weights(const ComplexMatrix& x_hat, const ComplexMatrix& x0, const Sparsifier& psi, double epsilon1) {
  if (x_hat.rows() != x0.rows() || x_hat.cols() != x0.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "estimate and reference differ in shape");
  }
  const ComplexMatrix diff = x_hat - x0;
  const RealMatrix d = psi.forward(diff).cwiseAbs();
  const RealMatrix ref = psi.forward(x0).cwiseAbs();

  Weights w;
  w.w1.resize(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double ratio = d.data()[i] / (1.0 + d.data()[i]);
    w.w1.data()[i] = ratio > epsilon1 ? 1.0 : 1.0 / (1.0 + ref.data()[i]);
  }
  w.w2 = (1.0 + diff.cwiseAbs().array()).inverse().matrix();
  return w;
}

Weights update_weights(const Image& x_hat, const Image& x0, const Sparsifier& psi, double epsilon1) {
  return update_weights(x_hat.as_complex(), x0.as_complex(), psi, epsilon1);
}

ComplexMatrix soft_threshold(const ComplexMatrix& z, const RealMatrix& tau) {
  ComplexMatrix out(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double mag = std::sqrt(std::norm(z.data()[i]));
    const double t = tau.data()[i];
    out.data()[i] = mag > t ? z.data()[i] * ((mag - t) / mag) : Complex(0.0, 0.0);
  }
  return out;
}

ComplexMatrix soft_threshold(const ComplexMatrix& z, double tau) {
  return soft_threshold(z, RealMatrix::Constant(z.rows(), z.cols(), tau));
}

}  // namespace lacs
