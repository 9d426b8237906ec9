#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "lacs/config.hpp"
#include "lacs/transforms.hpp"
#include "lacs/types.hpp"

namespace lacs {

/// f_VD: prob(k_y) proportional to (1 - (2/n)|k_y|)^p.
LinePdf pdf_vd(int n, double p);

/// Line marginal of the 2D density min(C, (k1^2 + k2^2)^-p); the origin
/// takes the cap C.
LinePdf pdf_vds(int n, double p, double C);

/// f_R: per-line sum of |F x0|. Throws AllZeroReference.
LinePdf pdf_r(const KSpace& reference);

/// f_ND: per-line sum of |F xhat - F x| / (|F xhat| + |F x|) with 0/0 = 0.
/// `truth_proxy` stands in for F x. Falls back to uniform when every ratio
/// vanishes.
LinePdf pdf_nd(const ComplexMatrix& estimate_kspace, const ComplexMatrix& truth_proxy);

/// Proxy for F x during reconstruction: measured lines where available,
/// the reference spectrum elsewhere.
ComplexMatrix nd_truth_proxy(const ComplexMatrix& reference_kspace, const Measurements& y);

/// Entry-wise gamma * adaptive + (1 - gamma) * variable.
LinePdf mix_pdf(const LinePdf& adaptive, const LinePdf& variable, double gamma);

/// Mean of the w2 weights.
double update_gamma(std::span<const double> w2);
double update_gamma(const RealMatrix& w2);

// ---------------------------------------------------------------------------
// Relaxed constrained adaptive design:
//   min over diagonal S >= 0 of tr(((F Psi_L)^* S F Psi_L)^-1),  tr(S) <= budget
// solved by projected gradient with backtracking on diag(S), one entry per
// k-space point, then summed per line.

struct AdaptiveDesignOptions {
  int max_iter = 200;
  double rel_tol = 1e-6;
  int grid_limit = 64;
};

struct AdaptiveDesignResult {
  LinePdf pdf;
  RealMatrix point_weights;  // diag(S) laid out on the centered n x n grid
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
};

/// Flat (column-major) indices of the `count` largest-modulus sparsifier
/// coefficients of `reference`.
std::vector<int> reference_support(const Image& reference, const Sparsifier& psi, int count);
int default_support_size(int n, double fraction);

/// Objective tr((A^* diag(s) A)^-1) for the design matrix of `support`;
/// +inf when singular. Exposed for oracle tests.
double design_objective(int n, const Sparsifier& psi, std::span<const int> support,
                        const RealMatrix& point_weights);

AdaptiveDesignResult pdf_a_design(int n, const Sparsifier& psi, std::span<const int> support, double budget,
                                  const AdaptiveDesignOptions& options = {});

inline LinePdf pdf_a(int n, const Sparsifier& psi, std::span<const int> support, double budget,
                     const AdaptiveDesignOptions& options = {}) {
  return pdf_a_design(n, psi, support, budget, options).pdf;
}

// ---------------------------------------------------------------------------
// Line drawing without replacement.

class SamplerState {
 public:
  SamplerState(int n, std::uint64_t seed) : acquired_(n), rng_(seed) {}

  const SamplingMask& acquired() const noexcept { return acquired_; }
  double gamma() const noexcept { return gamma_; }
  void set_gamma(double gamma);
  std::mt19937_64& rng() noexcept { return rng_; }

  void mark_acquired(std::span<const int> lines) { acquired_.add(lines); }

 private:
  SamplingMask acquired_;
  double gamma_ = 0.0;
  std::mt19937_64 rng_;
};

/// Draw k distinct lines not yet in state.acquired() from `pdf` restricted
/// to the unacquired lines. Adds them to the state. Throws NotEnoughLines.
std::vector<int> draw_lines(const LinePdf& pdf, int k, SamplerState& state);

/// Uniform double in [0, 1) from 53 random bits.
double uniform01(std::mt19937_64& rng);

/// Two-column CSV `k_y,prob`.
void write_pdf_csv(std::ostream& out, const LinePdf& pdf);

}  // namespace lacs
