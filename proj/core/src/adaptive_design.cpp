#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lacs/sampling.hpp"

namespace lacs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Column j holds F applied to the synthesis atom of support[j], flattened
// column-major over the n x n k-space grid.
ComplexMatrix design_matrix(int n, const Sparsifier& psi, std::span<const int> support) {
  const int coeff_rows = psi.rows_factor() * n;
  ComplexMatrix a(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) {
    const int idx = support[j];
    if (idx < 0 || idx >= coeff_rows * n) throw Error(ErrorCode::DimensionMismatch, "support index out of range");
    const RealMatrix atom = psi.synthesis_atom(n, idx % coeff_rows, idx / coeff_rows);
    const ComplexMatrix k = fft2c(atom.cast<Complex>());
    a.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXcd>(k.data(), k.size());
  }
  return a;
}

struct Evaluation {
  double value = kInf;
  Eigen::VectorXd gradient;
};

// tr(M^-1) with M = A^* diag(s) A; gradient_i = -||row_i(A M^-1)||^2.
Evaluation evaluate(const ComplexMatrix& a, const Eigen::VectorXd& s, bool with_gradient) {
  Evaluation out;
  const ComplexMatrix m = a.adjoint() * (s.cast<Complex>().asDiagonal() * a);
  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success) return out;
  const ComplexMatrix m_inv = llt.solve(ComplexMatrix::Identity(m.rows(), m.cols()));
  const double value = m_inv.diagonal().real().sum();
  if (!std::isfinite(value) || value <= 0.0) return out;
  out.value = value;
  if (with_gradient) out.gradient = -(a * m_inv).rowwise().squaredNorm();
  return out;
}

// Euclidean projection onto {s >= 0, sum(s) <= budget}.
Eigen::VectorXd project(const Eigen::VectorXd& v, double budget) {
  Eigen::VectorXd clipped = v.cwiseMax(0.0);
  if (clipped.sum() <= budget) return clipped;
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - budget) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

LinePdf aggregate_lines(int n, const Eigen::VectorXd& s) {
  const Eigen::Map<const RealMatrix> grid(s.data(), n, n);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int row = 0; row < n; ++row) w[static_cast<std::size_t>(row)] = grid.row(row).sum();
  return LinePdf::from_weights(std::move(w));
}

}  // namespace

int default_support_size(int n, double fraction) {
  return std::max(1, static_cast<int>(std::ceil(fraction * n * n - 1e-9)));
}

std::vector<int> reference_support(const Image& reference, const Sparsifier& psi, int count) {
  const RealMatrix coeffs = psi.forward(reference.as_complex()).cwiseAbs();
  const int total = static_cast<int>(coeffs.size());
  count = std::clamp(count, 0, total);
  std::vector<int> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int lhs, int rhs) { return coeffs.data()[lhs] > coeffs.data()[rhs]; });
  order.resize(static_cast<std::size_t>(count));
  std::sort(order.begin(), order.end());
  return order;
}

double design_objective(int n, const Sparsifier& psi, std::span<const int> support, const RealMatrix& point_weights) {
  if (point_weights.rows() != n || point_weights.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "point weights must be n x n");
  }
  const ComplexMatrix a = design_matrix(n, psi, support);
  const Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(point_weights.data(), point_weights.size());
  return evaluate(a, s, false).value;
}

AdaptiveDesignResult pdf_a_design(int n, const Sparsifier& psi, std::span<const int> support, double budget,
                                  const AdaptiveDesignOptions& options) {
  if (n > options.grid_limit) {
    throw Error(ErrorCode::GridTooLarge, "adaptive design limited to n <= " + std::to_string(options.grid_limit));
  }
  if (support.empty()) throw Error(ErrorCode::SingularDesign, "empty support");
  if (static_cast<long>(support.size()) > static_cast<long>(n) * n) {
    throw Error(ErrorCode::SingularDesign, "support larger than the number of k-space samples");
  }
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidConfig, "trace budget must be positive");

  const ComplexMatrix a = design_matrix(n, psi, support);
  const auto points = static_cast<Eigen::Index>(n) * n;
  Eigen::VectorXd s = Eigen::VectorXd::Constant(points, budget / static_cast<double>(points));
  Evaluation current = evaluate(a, s, true);
  if (!std::isfinite(current.value)) throw Error(ErrorCode::SingularDesign, "design matrix is rank deficient");

  AdaptiveDesignResult result;
  result.initial_objective = current.value;
  double step = s.mean() / std::max(current.gradient.cwiseAbs().maxCoeff(), 1e-300);

  int it = 0;
  for (; it < options.max_iter; ++it) {
    bool accepted = false;
    Eigen::VectorXd candidate;
    Evaluation next;
    for (int backtrack = 0; backtrack < 50; ++backtrack) {
      candidate = project(s - step * current.gradient, budget);
      const Eigen::VectorXd delta = candidate - s;
      next = evaluate(a, candidate, true);
      const double model = current.value + current.gradient.dot(delta) + delta.squaredNorm() / (2.0 * step);
      if (std::isfinite(next.value) && next.value <= model && next.value <= current.value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double change = std::abs(current.value - next.value) / std::max(current.value, 1e-300);
    s = std::move(candidate);
    current = std::move(next);
    step *= 2.0;
    if (change < options.rel_tol) {
      ++it;
      break;
    }
  }

  result.iterations = it;
  result.final_objective = current.value;
  result.point_weights = Eigen::Map<const RealMatrix>(s.data(), n, n);
  result.pdf = aggregate_lines(n, s);
  return result;
}

}  // namespace lacs
