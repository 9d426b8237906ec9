#include "lacs/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace lacs {

std::string_view to_string(SparsifierKind kind) {
  return kind == SparsifierKind::Wavelet ? "wavelet" : "gradient";
}

std::string_view to_string(WaveletFamily family) {
  return family == WaveletFamily::Haar ? "haar" : "d4";
}

std::string_view to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::VD: return "f_VD";
    case DensityKind::VDS: return "f_VDS";
    case DensityKind::R: return "f_R";
    case DensityKind::A: return "f_A";
    case DensityKind::ND: return "f_ND";
  }
  return "?";
}

std::string_view to_string(Algorithm algo) { return algo == Algorithm::LacsMri ? "LACS-MRI" : "L1-W"; }

namespace {

using DK = DensityKind;
constexpr auto kLacs = Algorithm::LacsMri;
constexpr auto kL1w = Algorithm::L1W;
constexpr std::optional<DK> kNone = std::nullopt;

const std::array<CaseSpec, kNumCases> kCaseTable = {{
    {1, DK::VD, DK::R, kLacs},
    {2, DK::VDS, DK::R, kLacs},
    {3, DK::VD, kNone, kLacs},
    {4, DK::VDS, kNone, kLacs},
    {5, kNone, DK::R, kLacs},
    {6, kNone, DK::A, kLacs},
    {7, DK::VD, DK::A, kLacs},
    {8, DK::VDS, DK::A, kLacs},
    {9, DK::VD, DK::R, kL1w},
    {10, DK::VDS, DK::R, kL1w},
    {11, DK::VD, kNone, kL1w},
    {12, DK::VDS, kNone, kL1w},
    {13, kNone, DK::R, kL1w},
    {14, kNone, DK::A, kL1w},
    {15, DK::VD, DK::A, kL1w},
    {16, DK::VDS, DK::A, kL1w},
    {17, DK::VD, DK::ND, kLacs},
    {18, DK::VDS, DK::ND, kLacs},
    {19, kNone, DK::ND, kLacs},
    {20, DK::VD, DK::ND, kL1w},
    {21, DK::VDS, DK::ND, kL1w},
    {22, kNone, DK::ND, kL1w},
}};

}  // namespace

CaseSpec case_lookup(int case_id) {
  if (case_id < 1 || case_id > kNumCases) {
    throw Error(ErrorCode::UnknownCase, "case " + std::to_string(case_id) + " (valid: 1-22)");
  }
  return kCaseTable[static_cast<std::size_t>(case_id - 1)];
}

int lines_per_round(double eta, int n, int rounds) {
  const double budget = eta * n / rounds;
  return std::max(1, static_cast<int>(std::ceil(budget - 1e-9)));
}

std::optional<ConfigIssue> validate_config(const ExperimentConfig& cfg, int n) {
  auto issue = [](ErrorCode code, std::string field, std::string msg) {
    return std::optional<ConfigIssue>(ConfigIssue{code, std::move(field), std::move(msg)});
  };
  auto invalid = [&](std::string field, std::string msg) {
    return issue(ErrorCode::InvalidConfig, std::move(field), std::move(msg));
  };

  if (cfg.case_id < 1 || cfg.case_id > kNumCases) {
    return issue(ErrorCode::UnknownCase, "case_id", "valid cases are 1-22");
  }
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) {
    return issue(ErrorCode::EtaOutOfRange, "eta", "eta must lie in (0, 1]");
  }
  if (cfg.num_iterations < 1) return invalid("num_iterations", "need at least one sampling round");
  if (n < 2) return invalid("n", "grid must be at least 2x2");
  // Each round draws ceil(eta*n/N) lines; a per-round budget below half a
  // line would more than double the requested sampling fraction.
  if (cfg.eta * n / cfg.num_iterations < 0.5) {
    return issue(ErrorCode::TooFewLinesPerRound, "num_iterations",
                 "eta*n/N = " + std::to_string(cfg.eta * n / cfg.num_iterations) + " < 0.5 lines per round");
  }
  if (cfg.trials < 1) return invalid("trials", "need at least one trial");
  if (!(cfg.p >= 0.0) || !std::isfinite(cfg.p)) return invalid("p", "exponent must be >= 0");
  if (!(cfg.C > 0.0) || !std::isfinite(cfg.C)) return invalid("C", "cap must be > 0");
  if (!(cfg.vd_exponent >= 0.0)) return invalid("vd_exponent", "exponent must be >= 0");
  if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) return invalid("lambda", "must be >= 0");
  if (!(cfg.epsilon1 > 0.0)) return invalid("epsilon1", "must be > 0");
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) return invalid("mu", "must be > 0");
  if (cfg.solver_max_iter < 1) return invalid("solver_max_iter", "must be >= 1");
  if (!(cfg.solver_tol >= 0.0)) return invalid("solver_tol", "must be >= 0");
  if (cfg.pocs_max_iter < 1) return invalid("pocs_max_iter", "must be >= 1");
  if (!(cfg.pocs_decay > 0.0 && cfg.pocs_decay < 1.0)) return invalid("pocs_decay", "must lie in (0, 1)");
  if (!(cfg.pocs_tol >= 0.0)) return invalid("pocs_tol", "must be >= 0");
  if (!(cfg.l1w_gamma >= 0.0 && cfg.l1w_gamma <= 1.0)) return invalid("l1w_gamma", "must lie in [0, 1]");
  if (cfg.trace_budget && !(*cfg.trace_budget > 0.0)) return invalid("trace_budget", "must be > 0");
  if (!(cfg.support_fraction > 0.0 && cfg.support_fraction <= 1.0)) {
    return invalid("support_fraction", "must lie in (0, 1]");
  }
  if (cfg.adaptive_grid_limit < 2) return invalid("adaptive_grid_limit", "must be >= 2");
  if (cfg.grayscale_c && !(*cfg.grayscale_c > 0.0 && std::isfinite(*cfg.grayscale_c))) {
    return invalid("grayscale_c", "must be > 0");
  }
  if (!(cfg.noise_sigma >= 0.0)) return invalid("noise_sigma", "must be >= 0");
  if (!(cfg.rsnr_cap_db > 0.0)) return invalid("rsnr_cap_db", "must be > 0");
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, int line_no) {
  throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": bad value '" +
                                            std::string(value) + "' for key '" + std::string(key) + "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, int line_no) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, line_no);
  return out;
}

bool parse_bool(std::string_view key, std::string_view value, int line_no) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, line_no);
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto real = [](double ExperimentConfig::*field) {
      return Setter([field](ExperimentConfig& c, std::string_view k, std::string_view v, int ln) {
        c.*field = parse_number<double>(k, v, ln);
      });
    };
    auto integer = [](int ExperimentConfig::*field) {
      return Setter([field](ExperimentConfig& c, std::string_view k, std::string_view v, int ln) {
        c.*field = parse_number<int>(k, v, ln);
      });
    };
    auto optional_real = [](std::optional<double> ExperimentConfig::*field) {
      return Setter([field](ExperimentConfig& c, std::string_view k, std::string_view v, int ln) {
        if (v == "none" || v.empty()) {
          c.*field = std::nullopt;
        } else {
          c.*field = parse_number<double>(k, v, ln);
        }
      });
    };
    t["case_id"] = integer(&ExperimentConfig::case_id);
    t["eta"] = real(&ExperimentConfig::eta);
    t["num_iterations"] = integer(&ExperimentConfig::num_iterations);
    t["trials"] = integer(&ExperimentConfig::trials);
    t["seed"] = [](ExperimentConfig& c, std::string_view k, std::string_view v, int ln) {
      c.seed = parse_number<std::uint64_t>(k, v, ln);
    };
    t["p"] = real(&ExperimentConfig::p);
    t["C"] = real(&ExperimentConfig::C);
    t["vd_exponent"] = real(&ExperimentConfig::vd_exponent);
    t["lambda"] = real(&ExperimentConfig::lambda);
    t["epsilon1"] = real(&ExperimentConfig::epsilon1);
    t["mu"] = real(&ExperimentConfig::mu);
    t["sparsifier"] = [](ExperimentConfig& c, std::string_view k, std::string_view v, int ln) {
      if (v == "wavelet") {
        c.sparsifier = SparsifierKind::Wavelet;
      } else if (v == "gradient") {
        c.sparsifier = SparsifierKind::Gradient;
      } else {
        bad_value(k, v, ln);
      }
    };
    t["wavelet"] = [](ExperimentConfig& c, std::string_view k, std::string_view v, int ln) {
      if (v == "d4" || v == "daubechies4") {
        c.wavelet = WaveletFamily::Daubechies4;
      } else if (v == "haar") {
        c.wavelet = WaveletFamily::Haar;
      } else {
        bad_value(k, v, ln);
      }
    };
    t["solver_max_iter"] = integer(&ExperimentConfig::solver_max_iter);
    t["solver_tol"] = real(&ExperimentConfig::solver_tol);
    t["pocs_max_iter"] = integer(&ExperimentConfig::pocs_max_iter);
    t["pocs_decay"] = real(&ExperimentConfig::pocs_decay);
    t["pocs_tol"] = real(&ExperimentConfig::pocs_tol);
    t["l1w_gamma"] = real(&ExperimentConfig::l1w_gamma);
    t["trace_budget"] = optional_real(&ExperimentConfig::trace_budget);
    t["support_fraction"] = real(&ExperimentConfig::support_fraction);
    t["adaptive_grid_limit"] = integer(&ExperimentConfig::adaptive_grid_limit);
    t["grayscale_c"] = optional_real(&ExperimentConfig::grayscale_c);
    t["gsc_modulus_sum"] = [](ExperimentConfig& c, std::string_view k, std::string_view v, int ln) {
      c.gsc_modulus_sum = parse_bool(k, v, ln);
    };
    t["noise_sigma"] = real(&ExperimentConfig::noise_sigma);
    t["rsnr_cap_db"] = real(&ExperimentConfig::rsnr_cap_db);
    return t;
  }();
  return table;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": expected key=value");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    auto it = setters().find(key);
    if (it == setters().end()) {
      throw Error(ErrorCode::InvalidConfig,
                  "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    it->second(base, key, value, line_no);
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

std::string format_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  auto opt = [](const std::optional<double>& v) {
    std::ostringstream s;
    s.precision(17);
    if (v) {
      s << *v;
    } else {
      s << "none";
    }
    return s.str();
  };
  out << "case_id=" << cfg.case_id << '\n'
      << "eta=" << cfg.eta << '\n'
      << "num_iterations=" << cfg.num_iterations << '\n'
      << "trials=" << cfg.trials << '\n'
      << "seed=" << cfg.seed << '\n'
      << "p=" << cfg.p << '\n'
      << "C=" << cfg.C << '\n'
      << "vd_exponent=" << cfg.vd_exponent << '\n'
      << "lambda=" << cfg.lambda << '\n'
      << "epsilon1=" << cfg.epsilon1 << '\n'
      << "mu=" << cfg.mu << '\n'
      << "sparsifier=" << to_string(cfg.sparsifier) << '\n'
      << "wavelet=" << to_string(cfg.wavelet) << '\n'
      << "solver_max_iter=" << cfg.solver_max_iter << '\n'
      << "solver_tol=" << cfg.solver_tol << '\n'
      << "pocs_max_iter=" << cfg.pocs_max_iter << '\n'
      << "pocs_decay=" << cfg.pocs_decay << '\n'
      << "pocs_tol=" << cfg.pocs_tol << '\n'
      << "l1w_gamma=" << cfg.l1w_gamma << '\n'
      << "trace_budget=" << opt(cfg.trace_budget) << '\n'
      << "support_fraction=" << cfg.support_fraction << '\n'
      << "adaptive_grid_limit=" << cfg.adaptive_grid_limit << '\n'
      << "grayscale_c=" << opt(cfg.grayscale_c) << '\n'
      << "gsc_modulus_sum=" << (cfg.gsc_modulus_sum ? "true" : "false") << '\n'
      << "noise_sigma=" << cfg.noise_sigma << '\n'
      << "rsnr_cap_db=" << cfg.rsnr_cap_db << '\n';
  return out.str();
}

}  // namespace lacs
