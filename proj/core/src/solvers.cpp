#include <algorithm>
#include <cmath>
#include <limits>

#include "lacs/recon.hpp"

namespace lacs {
namespace {

constexpr double kTiny = 1e-300;

ComplexMatrix clip_modulus(const ComplexMatrix& p, const RealMatrix& bound) {
  ComplexMatrix out(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double mag = std::sqrt(std::norm(p.data()[i]));
    const double b = bound.data()[i];
    out.data()[i] = mag > b ? p.data()[i] * (b / mag) : p.data()[i];
  }
  return out;
}

// prox of ||tau1 . K x||_1 + ||tau2 . (x - x0)||_1 at v. Uses the closed
// form when only one term is active (and K is orthonormal for the first);
// otherwise runs FISTA on the dual, warm-started from the previous call.
class WeightedProx {
 public:
  WeightedProx(const Sparsifier& psi, RealMatrix tau1, RealMatrix tau2, ComplexMatrix x0, int max_iter, double tol)
      : psi_(psi),
        tau1_(std::move(tau1)),
        tau2_(std::move(tau2)),
        x0_(std::move(x0)),
        max_iter_(max_iter),
        tol_(tol),
        has_tau1_(tau1_.maxCoeff() > 0.0),
        has_tau2_(tau2_.size() > 0 && tau2_.maxCoeff() > 0.0) {}

  void scale_tau1(double factor) { tau1_ *= factor; }

  ComplexMatrix operator()(const ComplexMatrix& v) {
    have_coeffs_ = false;
    if (!has_tau1_ && !has_tau2_) return v;
    if (!has_tau1_) return x0_ + soft_threshold(v - x0_, tau2_);
    if (!has_tau2_ && psi_.orthonormal()) {
      coeffs_ = soft_threshold(psi_.forward(v), tau1_);
      have_coeffs_ = true;
      return psi_.adjoint(coeffs_);
    }

    const double inv_l = 1.0 / psi_.norm_squared_bound();
    if (dual_.size() == 0) dual_ = ComplexMatrix::Zero(tau1_.rows(), tau1_.cols());
    ComplexMatrix p = dual_;
    ComplexMatrix q = p;
    double s = 1.0;
    for (int it = 0; it < max_iter_; ++it) {
      const ComplexMatrix p_next = clip_modulus(q + inv_l * psi_.forward(primal(v, q)), tau1_);
      const double s_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * s * s));
      const double change = (p_next - p).norm() / std::max(p_next.norm(), kTiny);
      q = p_next + ((s - 1.0) / s_next) * (p_next - p);
      p = p_next;
      s = s_next;
      if (change < tol_) break;
    }
    dual_ = p;
    return primal(v, p);
  }

  // Psi of the last result when the closed form produced it.
  const ComplexMatrix* coeffs() const { return have_coeffs_ ? &coeffs_ : nullptr; }

 private:
  ComplexMatrix primal(const ComplexMatrix& v, const ComplexMatrix& p) const {
    const ComplexMatrix shifted = v - psi_.adjoint(p);
    if (!has_tau2_) return shifted;
    return x0_ + soft_threshold(shifted - x0_, tau2_);
  }

  const Sparsifier& psi_;
  RealMatrix tau1_;
  RealMatrix tau2_;
  ComplexMatrix x0_;
  int max_iter_;
  double tol_;
  bool has_tau1_;
  bool has_tau2_;
  ComplexMatrix dual_;
  ComplexMatrix coeffs_;
  bool have_coeffs_ = false;
};

void check_finite(const ComplexMatrix& x) {
  if (!x.allFinite()) throw Error(ErrorCode::Diverged, "estimate became non-finite");
}

}  // namespace

SolveResult solve_l1w(const Measurements& y, const Sparsifier& psi, const L1wOptions& options) {
  if (y.empty()) throw Error(ErrorCode::EmptyMask, "no measured lines");
  const int n = y.n;
  SolveResult result;
  ComplexMatrix x = zero_filled(y);
  const double tau = psi.forward(x).cwiseAbs().maxCoeff();
  WeightedProx prox(psi, RealMatrix::Constant(psi.rows_factor() * n, n, tau), RealMatrix(),
                    ComplexMatrix::Zero(n, n), 100, 1e-5);

  // Convergence is judged on the shrunk iterate: early on the threshold can
  // leave only components that data consistency maps straight back to x.
  ComplexMatrix shrunk_prev = ComplexMatrix::Zero(n, n);
  int k = 0;
  for (; k < options.max_iter; ++k) {
    const ComplexMatrix shrunk = prox(x);
    const ComplexMatrix next = data_consistency(shrunk, y);
    check_finite(next);
    const double change = (shrunk - shrunk_prev).norm() / std::max(shrunk.norm(), kTiny);
    shrunk_prev = shrunk;
    x = next;
    prox.scale_tau1(options.decay);
    result.objective.push_back(psi.forward(x).cwiseAbs().sum());
    if (k >= 1 && change < options.tol) {
      ++k;
      break;
    }
  }
  result.iterations = k;
  result.residual = data_residual(fft2c(x), y);
  if (!std::isfinite(result.residual)) throw Error(ErrorCode::Diverged, "residual is not finite");
  result.x = std::move(x);
  return result;
}

double weighted_objective(const ComplexMatrix& x, const Measurements& y, const ComplexMatrix& x0,
                          const Weights& weights, const Sparsifier& psi, double lambda, double mu) {
  double value = weights.w1.cwiseProduct(psi.forward(x).cwiseAbs2().cwiseSqrt()).sum();
  if (lambda != 0.0) value += lambda * weights.w2.cwiseProduct((x - x0).cwiseAbs2().cwiseSqrt()).sum();
  const double r = data_residual(fft2c(x), y);
  return value + mu * r * r;
}

SolveResult solve_weighted(const Measurements& y, const ComplexMatrix& x0, const Weights& weights,
                           const Sparsifier& psi, const WeightedOptions& options, const ComplexMatrix* warm_start) {
  if (y.empty()) throw Error(ErrorCode::EmptyMask, "no measured lines");
  const int n = y.n;
  if (x0.rows() != n || x0.cols() != n || weights.w2.rows() != n || weights.w2.cols() != n ||
      weights.w1.rows() != psi.rows_factor() * n || weights.w1.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "weights or reference do not match the grid");
  }
  if (!(options.mu > 0.0)) throw Error(ErrorCode::InvalidConfig, "mu must be positive");

  auto objective = [&](const ComplexMatrix& x) {
    return weighted_objective(x, y, x0, weights, psi, options.lambda, options.mu);
  };

  std::vector<ComplexMatrix> starts{zero_filled(y), x0, data_consistency(x0, y)};
  if (warm_start != nullptr && warm_start->rows() == n && warm_start->cols() == n) starts.push_back(*warm_start);
  ComplexMatrix x;
  double fx = std::numeric_limits<double>::infinity();
  for (auto& candidate : starts) {
    const double f = objective(candidate);
    if (f < fx) {
      fx = f;
      x = std::move(candidate);
    }
  }
  if (!std::isfinite(fx)) throw Error(ErrorCode::Diverged, "objective is not finite at the start");

  // With step 1 / (2 mu) the gradient step on mu ||F_u x - y||^2 is exactly
  // the data-consistency projection.
  const double t = 1.0 / (2.0 * options.mu);
  WeightedProx prox(psi, t * weights.w1, (t * options.lambda) * weights.w2, x0, options.inner_max_iter,
                    options.inner_tol);

  // Objective from a known spectrum and, when available, known coefficients.
  auto objective_at = [&](const ComplexMatrix& u, const ComplexMatrix& ku, const ComplexMatrix* coeffs) {
    double value = coeffs ? weights.w1.cwiseProduct(coeffs->cwiseAbs2().cwiseSqrt()).sum()
                          : weights.w1.cwiseProduct(psi.forward(u).cwiseAbs2().cwiseSqrt()).sum();
    if (options.lambda != 0.0) {
      value += options.lambda * weights.w2.cwiseProduct((u - x0).cwiseAbs2().cwiseSqrt()).sum();
    }
    const double r = data_residual(ku, y);
    return value + options.mu * r * r;
  };

  // The extrapolated point z only enters through F z, which is tracked as the
  // same combination of spectra.
  SolveResult result;
  ComplexMatrix kx = fft2c(x);
  ComplexMatrix kx_prev = kx;
  ComplexMatrix kz = kx;
  double s = 1.0;
  int rejected = 0;
  int k = 0;
  for (; k < options.max_iter; ++k) {
    for (std::size_t i = 0; i < y.lines.size(); ++i) {
      kz.row(row_of_line(n, y.lines[i])) = y.rows.row(static_cast<Eigen::Index>(i));
    }
    ComplexMatrix u = prox(ifft2c(kz));
    check_finite(u);
    ComplexMatrix ku = fft2c(u);
    const double fu = objective_at(u, ku, prox.coeffs());
    kx_prev = kx;
    bool accepted = false;
    double change = 0.0;
    if (fu <= fx) {
      change = (fx - fu) / std::max(std::abs(fx), kTiny);
      x = u;
      kx = ku;
      fx = fu;
      accepted = true;
    }
    const double s_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * s * s));
    kz = kx + (s / s_next) * (ku - kx) + ((s - 1.0) / s_next) * (kx - kx_prev);
    s = s_next;
    result.objective.push_back(fx);
    if (accepted) {
      rejected = 0;
      if (change < options.tol) {
        ++k;
        break;
      }
    } else if (++rejected >= 5) {
      ++k;
      break;
    }
  }
  result.iterations = k;
  result.residual = data_residual(kx, y);
  result.x = std::move(x);
  return result;
}

}  // namespace lacs
