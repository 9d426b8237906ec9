#include <algorithm>
#include <cmath>
#include <limits>

#include "lacs/recon.hpp"

namespace lacs {

Acquisition::Acquisition(const Image& truth, double noise_sigma, std::uint64_t seed)
    : kspace_(fft2_centered(truth).grid()), sigma_(noise_sigma), rng_(seed) {}

Measurements Acquisition::acquire(std::span<const int> lines) {
  Measurements y = measure_kspace(kspace_, lines);
  if (sigma_ > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma_);
    for (Eigen::Index i = 0; i < y.rows.size(); ++i) {
      const double re = noise(rng_);
      const double im = noise(rng_);
      y.rows.data()[i] += Complex(re, im);
    }
  }
  return y;
}

Sparsifier make_sparsifier(const ExperimentConfig& cfg) { return Sparsifier(cfg.sparsifier, cfg.wavelet); }

WeightedOptions weighted_options(const ExperimentConfig& cfg) {
  WeightedOptions o;
  o.lambda = cfg.lambda;
  o.mu = cfg.mu;
  o.max_iter = cfg.solver_max_iter;
  o.tol = cfg.solver_tol;
  return o;
}

L1wOptions l1w_options(const ExperimentConfig& cfg) {
  return L1wOptions{cfg.pocs_max_iter, cfg.pocs_decay, cfg.pocs_tol};
}

LinePdf adaptive_design_for(const Image& x0, const ExperimentConfig& cfg) {
  const int n = x0.size();
  const int rounds = std::max(cfg.num_iterations, 1);
  const double budget = cfg.trace_budget.value_or(static_cast<double>(lines_per_round(cfg.eta, n, rounds)) * n);
  const Sparsifier psi = make_sparsifier(cfg);
  AdaptiveDesignOptions options;
  options.grid_limit = cfg.adaptive_grid_limit;
  if (n > options.grid_limit) {
    throw Error(ErrorCode::GridTooLarge, "adaptive design limited to n <= " + std::to_string(options.grid_limit));
  }
  const auto support = reference_support(x0, psi, default_support_size(n, cfg.support_fraction));
  return pdf_a(n, psi, support, budget, options);
}

namespace {

enum class Mode { Lacs, LacsScaled, L1w };

LinePdf variable_pdf(DensityKind kind, int n, const ExperimentConfig& cfg) {
  switch (kind) {
    case DensityKind::VD: return pdf_vd(n, cfg.vd_exponent);
    case DensityKind::VDS: return pdf_vds(n, cfg.p, cfg.C);
    default: break;
  }
  throw Error(ErrorCode::InvalidConfig, "not a variable density: " + std::string(to_string(kind)));
}

PipelineResult run_pipeline(Mode mode, Acquisition& scanner, const Image& x0_image, const ExperimentConfig& cfg,
                            std::optional<DensityKind> vd, std::optional<DensityKind> ad, const PipelineHooks& hooks) {
  const int n = scanner.n();
  if (x0_image.size() != n) throw Error(ErrorCode::DimensionMismatch, "reference and scanner grids differ");
  if (auto issue = validate_config(cfg, n)) throw Error(issue->code, issue->field + ": " + issue->message);
  if (ad == DensityKind::ND && n > cfg.adaptive_grid_limit) {
    throw Error(ErrorCode::GridTooLarge, "f_ND limited to n <= " + std::to_string(cfg.adaptive_grid_limit));
  }

  const Sparsifier psi = make_sparsifier(cfg);
  const WeightedOptions wopts = weighted_options(cfg);
  const L1wOptions lopts = l1w_options(cfg);
  const ComplexMatrix x0 = x0_image.as_complex();
  const ComplexMatrix x0_kspace = fft2c(x0);
  const int k = lines_per_round(cfg.eta, n, cfg.num_iterations);

  std::optional<LinePdf> f_vd;
  if (vd) f_vd = variable_pdf(*vd, n, cfg);
  std::optional<LinePdf> f_a;
  if (ad == DensityKind::A) f_a = hooks.adaptive_design ? *hooks.adaptive_design : adaptive_design_for(x0_image, cfg);

  SamplerState sampler(n, cfg.seed);
  Weights weights = Weights::initial(n, psi);
  ScaleEstimate scale;
  GscOptions gsc_options{cfg.gsc_modulus_sum};

  PipelineResult result;
  Measurements y;
  y.n = n;
  y.rows.resize(0, n);
  ComplexMatrix estimate;
  bool have_estimate = false;

  std::vector<int> lines = draw_lines(f_vd ? *f_vd : LinePdf::uniform(n), std::min(k, n), sampler);

  for (int round = 1; round <= cfg.num_iterations; ++round) {
    const Measurements fresh = scanner.acquire(lines);
    y.append(fresh);

    if (mode == Mode::LacsScaled && !fresh.empty()) {
      scale = gsc_update(fresh, measure_kspace(x0_kspace, lines), scale, gsc_options);
    }
    const ComplexMatrix x0_eff = mode == Mode::LacsScaled ? ComplexMatrix(scale.c * x0) : x0;

    double objective = 0.0;
    double gamma = 0.0;
    if (mode == Mode::L1w) {
      SolveResult solved = solve_l1w(y, psi, lopts);
      objective = solved.objective.empty() ? 0.0 : solved.objective.back();
      estimate = std::move(solved.x);
      gamma = cfg.l1w_gamma;
    } else {
      SolveResult solved = solve_weighted(y, x0_eff, weights, psi, wopts, have_estimate ? &estimate : nullptr);
      objective = solved.objective.empty() ? weighted_objective(solved.x, y, x0_eff, weights, psi, wopts.lambda, wopts.mu)
                                           : solved.objective.back();
      estimate = std::move(solved.x);
      weights = update_weights(estimate, x0_eff, psi, cfg.epsilon1);
      gamma = update_gamma(weights.w2);
    }
    have_estimate = true;
    sampler.set_gamma(std::clamp(gamma, 0.0, 1.0));

    RoundTrace tr;
    tr.round = round;
    tr.lines_acquired = static_cast<int>(y.lines.size());
    tr.gamma = sampler.gamma();
    tr.objective = objective;
    tr.c_estimate = scale.c;
    tr.rsnr_db = hooks.scorer ? hooks.scorer(Image(estimate.cwiseAbs())) : std::numeric_limits<double>::quiet_NaN();
    result.trace.push_back(tr);

    if (round == cfg.num_iterations) break;
    const int remaining = n - static_cast<int>(sampler.acquired().size());
    const int next_k = std::min(k, remaining);
    if (next_k == 0) {
      lines.clear();
      continue;
    }

    std::optional<LinePdf> f_ad;
    if (ad == DensityKind::R) {
      f_ad = pdf_r(KSpace(fft2c(x0_eff)));
    } else if (ad == DensityKind::ND) {
      f_ad = pdf_nd(fft2c(estimate), nd_truth_proxy(fft2c(x0_eff), y));
    } else if (ad == DensityKind::A) {
      f_ad = f_a;
    }

    LinePdf f_s;
    if (f_ad && f_vd) {
      f_s = mix_pdf(*f_ad, *f_vd, sampler.gamma());
    } else if (f_ad) {
      f_s = *f_ad;
    } else if (f_vd) {
      f_s = *f_vd;
    } else {
      f_s = LinePdf::uniform(n);
    }
    lines = draw_lines(f_s, next_k, sampler);
  }

  result.estimate = std::move(estimate);
  result.mask = sampler.acquired();
  return result;
}

}  // namespace

PipelineResult lacs_mri(Acquisition& scanner, const Image& x0, const ExperimentConfig& cfg,
                        std::optional<DensityKind> vd, std::optional<DensityKind> ad, const PipelineHooks& hooks) {
  return run_pipeline(Mode::Lacs, scanner, x0, cfg, vd, ad, hooks);
}

PipelineResult l1w_pipeline(Acquisition& scanner, const Image& x0, const ExperimentConfig& cfg,
                            std::optional<DensityKind> vd, std::optional<DensityKind> ad,
                            const PipelineHooks& hooks) {
  return run_pipeline(Mode::L1w, scanner, x0, cfg, vd, ad, hooks);
}

PipelineResult lacs_mri_sc(Acquisition& scanner, const Image& x0, const ExperimentConfig& cfg,
                           std::optional<DensityKind> vd, std::optional<DensityKind> ad,
                           const PipelineHooks& hooks) {
  return run_pipeline(Mode::LacsScaled, scanner, x0, cfg, vd, ad, hooks);
}

}  // namespace lacs
