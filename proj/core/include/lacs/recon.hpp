#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lacs/config.hpp"
#include "lacs/grayscale.hpp"
#include "lacs/sampling.hpp"
#include "lacs/transforms.hpp"
#include "lacs/types.hpp"

namespace lacs {

/// Diagonal weights stored in the shape of what they multiply: w1 like the
/// sparsifier coefficients, w2 like the image.
struct Weights {
  RealMatrix w1;
  RealMatrix w2;

  /// W1 = I, W2 = 0: the state before any reconstruction exists.
  static Weights initial(int n, const Sparsifier& psi);
};

/// w1_i = 1 when d_i / (1 + d_i) > epsilon1 with d = |Psi(xhat - x0)|, else
/// 1 / (1 + |Psi x0|_i); w2_i = 1 / (1 + |xhat - x0|_i).
Weights update_weights(const ComplexMatrix& x_hat, const ComplexMatrix& x0, const Sparsifier& psi, double epsilon1);
Weights update_weights(const Image& x_hat, const Image& x0, const Sparsifier& psi, double epsilon1);

/// Complex soft threshold z * max(0, 1 - tau / |z|), entry-wise.
ComplexMatrix soft_threshold(const ComplexMatrix& z, const RealMatrix& tau);
ComplexMatrix soft_threshold(const ComplexMatrix& z, double tau);

// ---------------------------------------------------------------------------

struct L1wOptions {
  int max_iter = 200;
  double decay = 0.9;
  double tol = 1e-6;
};

struct SolveResult {
  ComplexMatrix x;
  std::vector<double> objective;  // one entry per iteration, after the step
  int iterations = 0;
  double residual = 0.0;          // ||F_u x - y||_2
};

/// POCS: alternate sparsifier shrinkage with a geometrically decaying
/// threshold and data-consistency projection. Throws EmptyMask, Diverged.
SolveResult solve_l1w(const Measurements& y, const Sparsifier& psi, const L1wOptions& options = {});

struct WeightedOptions {
  double lambda = 4.0;
  double mu = 1000.0;
  int max_iter = 150;
  double tol = 1e-6;
  int inner_max_iter = 5;
  double inner_tol = 1e-3;
};

/// ||W1 Psi x||_1 + lambda ||W2 (x - x0)||_1 + mu ||F_u x - y||_2^2
double weighted_objective(const ComplexMatrix& x, const Measurements& y, const ComplexMatrix& x0,
                          const Weights& weights, const Sparsifier& psi, double lambda, double mu);

/// Monotone FISTA on the penalized objective above. The run starts from the
/// best of the zero-filled image, x0, its data-consistent projection and
/// `warm_start`, so the result never scores worse than any of them.
SolveResult solve_weighted(const Measurements& y, const ComplexMatrix& x0, const Weights& weights,
                           const Sparsifier& psi, const WeightedOptions& options = {},
                           const ComplexMatrix* warm_start = nullptr);

// ---------------------------------------------------------------------------
// Pipelines.

/// Simulated scanner. The ground truth never leaves this object; pipelines
/// only see the lines they ask for.
class Acquisition {
 public:
  Acquisition(const Image& truth, double noise_sigma = 0.0, std::uint64_t seed = 0);

  int n() const noexcept { return static_cast<int>(kspace_.rows()); }
  Measurements acquire(std::span<const int> lines);

 private:
  ComplexMatrix kspace_;
  double sigma_;
  std::mt19937_64 rng_;
};

struct RoundTrace {
  int round = 0;
  int lines_acquired = 0;
  double gamma = 0.0;
  double rsnr_db = 0.0;  // NaN without a scorer
  double objective = 0.0;
  double c_estimate = 1.0;
};

struct PipelineResult {
  ComplexMatrix estimate;
  SamplingMask mask;
  std::vector<RoundTrace> trace;

  Image magnitude() const { return Image(estimate.cwiseAbs()); }
};

struct PipelineHooks {
  std::function<double(const Image&)> scorer;
  /// Precomputed f_A; computed on demand when absent.
  const LinePdf* adaptive_design = nullptr;
};

/// Multi-round acquisition and reconstruction. Densities come from `vd` and
/// `ad`; cfg.seed drives line selection.
PipelineResult lacs_mri(Acquisition& scanner, const Image& x0, const ExperimentConfig& cfg,
                        std::optional<DensityKind> vd, std::optional<DensityKind> ad,
                        const PipelineHooks& hooks = {});

/// Same rounds, reconstruction by solve_l1w, gamma fixed at cfg.l1w_gamma.
PipelineResult l1w_pipeline(Acquisition& scanner, const Image& x0, const ExperimentConfig& cfg,
                            std::optional<DensityKind> vd, std::optional<DensityKind> ad,
                            const PipelineHooks& hooks = {});

/// LACS-MRI with the reference replaced by c * x0, c re-estimated from each
/// round's new lines.
PipelineResult lacs_mri_sc(Acquisition& scanner, const Image& x0, const ExperimentConfig& cfg,
                           std::optional<DensityKind> vd, std::optional<DensityKind> ad,
                           const PipelineHooks& hooks = {});

/// f_A for the configured sparsifier and reference, with the default support
/// size and trace budget.
LinePdf adaptive_design_for(const Image& x0, const ExperimentConfig& cfg);

Sparsifier make_sparsifier(const ExperimentConfig& cfg);
WeightedOptions weighted_options(const ExperimentConfig& cfg);
L1wOptions l1w_options(const ExperimentConfig& cfg);

}  // namespace lacs
