#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lacs/error.hpp"

namespace lacs {

enum class SparsifierKind { Wavelet, Gradient };
enum class WaveletFamily { Haar, Daubechies4 };

enum class DensityKind { VD, VDS, R, A, ND };
enum class Algorithm { LacsMri, L1W };

std::string_view to_string(SparsifierKind kind);
std::string_view to_string(WaveletFamily family);
std::string_view to_string(DensityKind kind);
std::string_view to_string(Algorithm algo);

/// One row of the case reference table.
struct CaseSpec {
  int case_id = 0;
  std::optional<DensityKind> variable_density;
  std::optional<DensityKind> adaptive_density;
  Algorithm algorithm = Algorithm::LacsMri;

  bool operator==(const CaseSpec&) const = default;
};

inline constexpr int kNumCases = 22;

/// Throws Error(UnknownCase) outside 1..22.
CaseSpec case_lookup(int case_id);

struct ExperimentConfig {
  int case_id = 1;
  double eta = 0.12;
  int num_iterations = 3;  // sampling rounds N
  int trials = 50;
  std::uint64_t seed = 0;

  // f_VDS exponent and cap; f_VD has its own exponent.
  double p = 0.7;
  double C = 1.0;
  double vd_exponent = 1.0;

  double lambda = 4.0;
  double epsilon1 = 0.1;
  double mu = 1000.0;
  SparsifierKind sparsifier = SparsifierKind::Wavelet;
  WaveletFamily wavelet = WaveletFamily::Daubechies4;

  int solver_max_iter = 150;
  double solver_tol = 1e-6;
  int pocs_max_iter = 200;
  double pocs_decay = 0.9;
  double pocs_tol = 1e-6;

  double l1w_gamma = 0.5;
  std::optional<double> trace_budget;  // epsilon_tr of the adaptive design
  double support_fraction = 0.05;
  int adaptive_grid_limit = 64;

  std::optional<double> grayscale_c;
  bool gsc_modulus_sum = false;

  double noise_sigma = 0.0;
  double rsnr_cap_db = 300.0;

  bool operator==(const ExperimentConfig&) const = default;
};

struct ConfigIssue {
  ErrorCode code;
  std::string field;
  std::string message;
};

/// First violated invariant for an n x n grid, or nullopt when the config is
/// usable. Never throws.
std::optional<ConfigIssue> validate_config(const ExperimentConfig& cfg, int n);

/// Lines drawn per sampling round: ceil(eta * n / N).
int lines_per_round(double eta, int n, int rounds);

/// Parse `key = value` lines; `#` starts a comment. Unknown keys and
/// malformed values throw Error(InvalidConfig).
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Inverse of parse_config; every field is written.
std::string format_config(const ExperimentConfig& cfg);

}  // namespace lacs
