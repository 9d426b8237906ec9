#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "lacs/bench.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  std::string ref;
  std::string follow;
  int trials = 0;
  std::string image = "shepp";
  int n = 32;
  double pgm_scale = 1.0;
  double intensity = 1.0;
  bool no_tumor = false;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key=value configuration file");
    seed_opt = app->add_option("--seed", seed, "base RNG seed (trial t uses seed + t)");
    app->add_option("--out", out, "output CSV path (default: stdout)");
    app->add_option("--ref", ref, "reference image (binary PGM)");
    app->add_option("--follow", follow, "follow-up image (binary PGM)");
    trials_opt = app->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    app->add_option("--image", image, "built-in image when no PGM is given")
        ->check(CLI::IsMember({"shepp", "brain"}));
    app->add_option("--n", n, "size of the built-in image")->check(CLI::PositiveNumber);
    app->add_option("--pgm-scale", pgm_scale, "PGM value = pixel * scale")->check(CLI::PositiveNumber);
    app->add_option("--intensity", intensity, "intensity of the built-in image")->check(CLI::PositiveNumber);
    app->add_flag("--no-tumor", no_tumor, "built-in phantom without the tumor");
  }

  lacs::ExperimentConfig config_value() const {
    lacs::ExperimentConfig cfg;
    if (!config.empty()) cfg = lacs::load_config(config);
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (trials_opt->count() > 0) cfg.trials = trials;
    return cfg;
  }

  lacs::ImagePair images() const {
    if (!ref.empty() || !follow.empty()) {
      if (ref.empty() || follow.empty()) {
        throw lacs::Error(lacs::ErrorCode::InvalidConfig, "--ref and --follow must be given together");
      }
      return lacs::ImagePair{lacs::load_image(ref, pgm_scale), lacs::load_image(follow, pgm_scale)};
    }
    if (image == "brain") return lacs::brain_standin(n, intensity);
    lacs::PhantomSpec spec;
    spec.n = n;
    spec.intensity = intensity;
    if (!no_tumor) spec.tumor = lacs::PhantomSpec::default_tumor(n, intensity);
    return lacs::shepp_logan(spec);
  }

  template <typename Writer>
  void emit(Writer&& write) const {
    if (out.empty()) {
      write(std::cout);
      return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw lacs::Error(lacs::ErrorCode::IoError, "cannot write " + out);
    write(file);
  }
};

bool is_config_error(lacs::ErrorCode code) {
  switch (code) {
    case lacs::ErrorCode::InvalidConfig:
    case lacs::ErrorCode::EtaOutOfRange:
    case lacs::ErrorCode::TooFewLinesPerRound:
    case lacs::ErrorCode::UnknownCase:
      return true;
    default:
      return false;
  }
}

std::vector<double> default_range(double first, double last, double step) {
  return lacs::linspace_step(first, last, step);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacsmri: reference-based adaptive compressed-sensing MRI experiments"};
  app.require_subcommand(1);

  // run-case
  Common run_common;
  int run_case_id = 0;
  double run_eta = 0.0;
  std::string run_trace;
  auto* run = app.add_subcommand("run-case", "run one case for cfg.trials trials");
  run_common.attach(run);
  auto* run_case_opt = run->add_option("--case", run_case_id, "case id 1-22");
  auto* run_eta_opt = run->add_option("--eta", run_eta, "compression level");
  run->add_option("--trace", run_trace, "also write the per-round trace CSV here");

  // sweep-eta
  Common eta_common;
  std::vector<int> eta_cases{1};
  std::vector<double> eta_list = default_range(0.03, 0.21, 0.03);
  auto* sweep_eta = app.add_subcommand("sweep-eta", "mean RSNR per case and eta");
  eta_common.attach(sweep_eta);
  sweep_eta->add_option("--cases", eta_cases, "case ids")->delimiter(',');
  sweep_eta->add_option("--etas", eta_list, "eta values")->delimiter(',');

  // sweep-p-c
  Common pc_common;
  int pc_case = 4;
  double p_min = 0.02;
  double p_max = 1.5;
  double p_step = 0.02;
  std::vector<double> c_list{1.0, 0.1, 0.01, 0.001};
  auto* sweep_pc = app.add_subcommand("sweep-p-c", "f_VDS exponent and cap sweep");
  pc_common.attach(sweep_pc);
  sweep_pc->add_option("--case", pc_case, "case id (must use f_VDS)");
  sweep_pc->add_option("--p-min", p_min);
  sweep_pc->add_option("--p-max", p_max);
  sweep_pc->add_option("--p-step", p_step)->check(CLI::PositiveNumber);
  sweep_pc->add_option("--C", c_list, "cap values")->delimiter(',');

  // sweep-grayscale
  Common gs_common;
  std::vector<double> gs_c = default_range(0.25, 2.5, 0.25);
  std::vector<double> gs_eta{0.15};
  auto* sweep_gs = app.add_subcommand("sweep-grayscale", "scale-corrected vs uncorrected LACS-MRI");
  gs_common.attach(sweep_gs);
  sweep_gs->add_option("--c", gs_c, "intensity ratios")->delimiter(',');
  sweep_gs->add_option("--etas", gs_eta, "eta values")->delimiter(',');

  // gen-phantom
  Common gen_common;
  std::string gen_ref_out;
  std::string gen_follow_out;
  auto* gen = app.add_subcommand("gen-phantom", "write the built-in test images as 16-bit PGM");
  gen_common.attach(gen);
  gen->add_option("--out-ref", gen_ref_out, "reference PGM path")->required();
  gen->add_option("--out-follow", gen_follow_out, "follow-up PGM path")->required();

  // pdf-dump
  Common pdf_common;
  std::string pdf_kind = "vd";
  double pdf_p = 1.0;
  double pdf_cap = 1.0;
  auto* pdf = app.add_subcommand("pdf-dump", "write a line density as k_y,prob CSV");
  pdf_common.attach(pdf);
  pdf->add_option("--kind", pdf_kind, "vd, vds, r or a")->check(CLI::IsMember({"vd", "vds", "r", "a"}));
  pdf->add_option("--p", pdf_p, "exponent");
  pdf->add_option("--C", pdf_cap, "f_VDS cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      lacs::ExperimentConfig cfg = run_common.config_value();
      if (run_case_opt->count() > 0) cfg.case_id = run_case_id;
      if (run_eta_opt->count() > 0) cfg.eta = run_eta;
      const auto result = lacs::run_case(cfg.case_id, run_common.images(), cfg);
      run_common.emit([&](std::ostream& os) { lacs::write_case_csv(os, {result}); });
      if (!run_trace.empty()) {
        std::ofstream trace(run_trace, std::ios::binary);
        if (!trace) throw lacs::Error(lacs::ErrorCode::IoError, "cannot write " + run_trace);
        lacs::write_trace_csv(trace, result);
      }
    } else if (*sweep_eta) {
      const auto cfg = eta_common.config_value();
      const auto table = lacs::sweep_eta(eta_cases, eta_list, eta_common.images(), cfg);
      eta_common.emit([&](std::ostream& os) { lacs::write_eta_csv(os, table); });
    } else if (*sweep_pc) {
      auto cfg = pc_common.config_value();
      cfg.case_id = pc_case;
      const auto table = lacs::sweep_p_c(lacs::linspace_step(p_min, p_max, p_step), c_list, pc_common.images(), cfg);
      pc_common.emit([&](std::ostream& os) { lacs::write_pc_csv(os, table); });
    } else if (*sweep_gs) {
      const auto cfg = gs_common.config_value();
      const auto table = lacs::sweep_grayscale(gs_c, gs_eta, gs_common.images(), cfg);
      gs_common.emit([&](std::ostream& os) { lacs::write_grayscale_csv(os, table); });
    } else if (*gen) {
      const auto pair = gen_common.images();
      lacs::save_image(pair.reference, gen_ref_out, gen_common.pgm_scale);
      lacs::save_image(pair.followup, gen_follow_out, gen_common.pgm_scale);
    } else if (*pdf) {
      const auto cfg = pdf_common.config_value();
      const auto pair = pdf_common.images();
      const int n = pair.reference.size();
      lacs::LinePdf density;
      if (pdf_kind == "vd") {
        density = lacs::pdf_vd(n, pdf_p);
      } else if (pdf_kind == "vds") {
        density = lacs::pdf_vds(n, pdf_p, pdf_cap);
      } else if (pdf_kind == "r") {
        density = lacs::pdf_r(lacs::fft2_centered(pair.reference));
      } else {
        density = lacs::adaptive_design_for(pair.reference, cfg);
      }
      pdf_common.emit([&](std::ostream& os) { lacs::write_pdf_csv(os, density); });
    }
  } catch (const lacs::Error& e) {
    std::cerr << "lacsmri: " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "lacsmri: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
