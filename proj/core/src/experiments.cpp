#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lacs/bench.hpp"

namespace lacs {
namespace {

constexpr std::uint64_t kNoiseSalt = 0x9E3779B97F4A7C15ULL;

template <typename Fn>
void parallel_for(int count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void summarize(CaseResult& result) {
  const auto count = static_cast<double>(result.per_trial.size());
  double sum = 0.0;
  for (const auto& t : result.per_trial) sum += t.rsnr_db;
  result.mean_rsnr_db = count > 0 ? sum / count : 0.0;
  double sq = 0.0;
  for (const auto& t : result.per_trial) sq += (t.rsnr_db - result.mean_rsnr_db) * (t.rsnr_db - result.mean_rsnr_db);
  result.std_rsnr_db = count > 1 ? std::sqrt(sq / (count - 1.0)) : 0.0;
}

}  // namespace

CaseResult run_case(int case_id, const ImagePair& images, const ExperimentConfig& cfg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const CaseSpec spec = case_lookup(case_id);
  ExperimentConfig base = cfg;
  base.case_id = case_id;
  const int n = images.reference.size();
  if (images.followup.size() != n) throw Error(ErrorCode::DimensionMismatch, "reference and follow-up differ in size");
  if (auto issue = validate_config(base, n)) throw Error(issue->code, issue->field + ": " + issue->message);

  const bool scale_correct =
      options.scale_correction.value_or(cfg.grayscale_c.has_value()) && spec.algorithm == Algorithm::LacsMri;
  const Image truth = cfg.grayscale_c ? Image(*cfg.grayscale_c * images.followup.pixels()) : images.followup;
  const Image& x0 = images.reference;

  std::optional<LinePdf> design;
  if (spec.adaptive_density == DensityKind::A) design = adaptive_design_for(x0, base);

  CaseResult result;
  result.case_id = case_id;
  result.eta = cfg.eta;
  result.trials = cfg.trials;
  result.per_trial.resize(static_cast<std::size_t>(cfg.trials));

  parallel_for(cfg.trials, options.threads, [&](int t) {
    ExperimentConfig trial_cfg = base;
    trial_cfg.seed = cfg.seed + static_cast<std::uint64_t>(t);
    Acquisition scanner(truth, cfg.noise_sigma, trial_cfg.seed ^ kNoiseSalt);
    PipelineHooks hooks;
    hooks.scorer = [&](const Image& img) { return rsnr(truth, img, cfg.rsnr_cap_db); };
    hooks.adaptive_design = design ? &*design : nullptr;

    PipelineResult run;
    if (spec.algorithm == Algorithm::L1W) {
      run = l1w_pipeline(scanner, x0, trial_cfg, spec.variable_density, spec.adaptive_density, hooks);
    } else if (scale_correct) {
      run = lacs_mri_sc(scanner, x0, trial_cfg, spec.variable_density, spec.adaptive_density, hooks);
    } else {
      run = lacs_mri(scanner, x0, trial_cfg, spec.variable_density, spec.adaptive_density, hooks);
    }
    TrialRecord& rec = result.per_trial[static_cast<std::size_t>(t)];
    rec.trial = t;
    rec.trace = std::move(run.trace);
    rec.rsnr_db = rec.trace.back().rsnr_db;
  });

  summarize(result);
  result.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CaseResult> sweep_eta(const std::vector<int>& case_ids, const std::vector<double>& etas,
                                  const ImagePair& images, const ExperimentConfig& cfg) {
  std::vector<CaseResult> table;
  for (int id : case_ids) {
    for (double eta : etas) {
      ExperimentConfig c = cfg;
      c.eta = eta;
      table.push_back(run_case(id, images, c));
    }
  }
  return table;
}

std::vector<PcPoint> sweep_p_c(const std::vector<double>& ps, const std::vector<double>& cs, const ImagePair& images,
                               const ExperimentConfig& cfg) {
  if (case_lookup(cfg.case_id).variable_density != DensityKind::VDS) {
    throw Error(ErrorCode::InvalidConfig, "p/C sweep needs a case that samples with f_VDS");
  }
  std::vector<PcPoint> table;
  for (double p : ps) {
    for (double C : cs) {
      ExperimentConfig c = cfg;
      c.p = p;
      c.C = C;
      const CaseResult r = run_case(cfg.case_id, images, c);
      table.push_back(PcPoint{p, C, r.trials, r.mean_rsnr_db, r.std_rsnr_db});
    }
  }
  return table;
}

std::vector<GrayscalePoint> sweep_grayscale(const std::vector<double>& cs, const std::vector<double>& etas,
                                            const ImagePair& images, const ExperimentConfig& cfg) {
  std::vector<GrayscalePoint> table;
  for (double c : cs) {
    for (double eta : etas) {
      ExperimentConfig e = cfg;
      e.eta = eta;
      e.grayscale_c = c;
      RunOptions sc;
      sc.scale_correction = true;
      RunOptions nsc;
      nsc.scale_correction = false;
      const CaseResult with = run_case(cfg.case_id, images, e, sc);
      const CaseResult without = run_case(cfg.case_id, images, e, nsc);
      table.push_back(GrayscalePoint{c, eta, with.trials, with.mean_rsnr_db, with.std_rsnr_db, without.mean_rsnr_db,
                                     without.std_rsnr_db});
    }
  }
  return table;
}

std::vector<double> linspace_step(double first, double last, double step) {
  std::vector<double> values;
  if (!(step > 0.0) || last < first) return values;
  const auto count = static_cast<int>(std::floor((last - first) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) values.push_back(first + i * step);
  return values;
}

}  // namespace lacs
