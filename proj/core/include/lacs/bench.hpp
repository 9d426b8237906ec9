#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lacs/config.hpp"
#include "lacs/recon.hpp"
#include "lacs/types.hpp"

namespace lacs {

/// 20 log10(||x_true|| / ||x_true - x_hat||), capped at `cap_db`.
/// Throws ZeroTruth and DimensionMismatch.
double rsnr(const Image& x_true, const Image& x_hat, double cap_db = 300.0);

// ---------------------------------------------------------------------------
// Test images.

struct Tumor {
  double row = 0.0;
  double col = 0.0;
  double radius = 0.0;
  double delta = 0.0;
};

struct PhantomSpec {
  int n = 32;
  double intensity = 1.0;  // value of the outer ellipse
  std::optional<Tumor> tumor;

  /// Small bright blob at the lower edge of the left dark ellipse, scaled
  /// with n.
  static Tumor default_tumor(int n, double intensity = 1.0);
};

struct ImagePair {
  Image reference;
  Image followup;
};

/// Modified Shepp-Logan phantom; the follow-up adds `tumor` to every pixel
/// whose centre lies within `radius` of (row, col). Throws TumorOutOfBounds.
ImagePair shepp_logan(const PhantomSpec& spec);

/// Deterministic smooth head-like test image: skull ring, folded cortex,
/// ventricles. The follow-up carries a small lesion.
ImagePair brain_standin(int n = 64, double intensity = 1.0);

// ---------------------------------------------------------------------------
// Binary PGM (P5). Stored values are round(value * scale) on load they are
// divided by scale again.

Image load_image(const std::filesystem::path& path, double scale = 1.0);
void save_image(const Image& img, const std::filesystem::path& path, double scale = 1.0);

// ---------------------------------------------------------------------------
// Experiments.

struct TrialRecord {
  int trial = 0;
  double rsnr_db = 0.0;
  std::vector<RoundTrace> trace;
};

struct CaseResult {
  int case_id = 0;
  double eta = 0.0;
  double mean_rsnr_db = 0.0;
  double std_rsnr_db = 0.0;
  int trials = 0;
  double runtime_seconds = 0.0;
  std::vector<TrialRecord> per_trial;
};

struct RunOptions {
  /// Force scale correction on or off; by default it follows grayscale_c.
  std::optional<bool> scale_correction;
  /// Worker threads for independent trials; 0 picks the hardware count.
  unsigned threads = 0;
};

/// Runs cfg.trials seeded trials of `case_id`. The truth is the follow-up
/// image, multiplied by grayscale_c when that is set; the reference is x0.
CaseResult run_case(int case_id, const ImagePair& images, const ExperimentConfig& cfg, const RunOptions& options = {});

std::vector<CaseResult> sweep_eta(const std::vector<int>& case_ids, const std::vector<double>& etas,
                                  const ImagePair& images, const ExperimentConfig& cfg);

struct PcPoint {
  double p = 0.0;
  double C = 0.0;
  int trials = 0;
  double mean_rsnr_db = 0.0;
  double std_rsnr_db = 0.0;
};

/// cfg.case_id must use f_VDS.
std::vector<PcPoint> sweep_p_c(const std::vector<double>& ps, const std::vector<double>& cs, const ImagePair& images,
                               const ExperimentConfig& cfg);

struct GrayscalePoint {
  double c = 0.0;
  double eta = 0.0;
  int trials = 0;
  double sc_mean = 0.0;
  double sc_std = 0.0;
  double nsc_mean = 0.0;
  double nsc_std = 0.0;
};

std::vector<GrayscalePoint> sweep_grayscale(const std::vector<double>& cs, const std::vector<double>& etas,
                                            const ImagePair& images, const ExperimentConfig& cfg);

/// Inclusive arithmetic range with rounding-safe endpoint handling.
std::vector<double> linspace_step(double first, double last, double step);

// ---------------------------------------------------------------------------
// CSV.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comma separated, no quoting. Throws IoError on ragged rows.
CsvTable read_csv(std::istream& in);

/// case_id,eta,trial,round,gamma,c_estimate,rsnr_db
void write_case_csv(std::ostream& out, const std::vector<CaseResult>& results);
/// trial,round,lines_acquired,gamma,rsnr_db,objective,c_estimate
void write_trace_csv(std::ostream& out, const CaseResult& result);
/// case_id,eta,trials,mean_rsnr_db,std_rsnr_db
void write_eta_csv(std::ostream& out, const std::vector<CaseResult>& results);
/// p,C,trials,mean_rsnr_db,std_rsnr_db
void write_pc_csv(std::ostream& out, const std::vector<PcPoint>& points);
/// c,eta,trials,sc_mean_rsnr_db,sc_std_rsnr_db,nsc_mean_rsnr_db,nsc_std_rsnr_db
void write_grayscale_csv(std::ostream& out, const std::vector<GrayscalePoint>& points);

std::string format_double(double value);

}  // namespace lacs
