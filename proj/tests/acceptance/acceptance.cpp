#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "lacs/bench.hpp"

using namespace lacs;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "  ok   " : "  MISS ") + what);
  }
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

RealMatrix random_real(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  RealMatrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

ComplexMatrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(d(rng), d(rng));
  return m;
}

Complex inner(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.adjoint() * b).trace(); }

ImagePair phantom_with_tumor(int n) {
  PhantomSpec spec;
  spec.n = n;
  spec.tumor = PhantomSpec::default_tumor(n);
  return shepp_logan(spec);
}

// ---------------------------------------------------------------------------

Outcome operators() {
  Outcome out;
  std::mt19937_64 rng(101);

  double worst_unitary = 0.0;
  for (int n : {8, 16, 32, 64}) {
    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix x = random_complex(n, n, rng);
      const double norm = x.norm();
      worst_unitary = std::max(worst_unitary, std::abs(fft2c(x).norm() - norm) / norm);
      worst_unitary = std::max(worst_unitary, std::abs(ifft2c(x).norm() - norm) / norm);
      for (auto family : {WaveletFamily::Haar, WaveletFamily::Daubechies4}) {
        const Wavelet w(family);
        worst_unitary = std::max(worst_unitary, std::abs(w.forward(x).norm() - norm) / norm);
        worst_unitary = std::max(worst_unitary, std::abs(w.inverse(x).norm() - norm) / norm);
      }
    }
  }
  out.require(worst_unitary <= 1e-9, "FFT/wavelet norm preservation, worst relative deviation " +
                                         std::to_string(worst_unitary));

  const int n = 8;
  const Sparsifier wav(SparsifierKind::Wavelet);
  const Sparsifier haar(SparsifierKind::Wavelet, WaveletFamily::Haar);
  const Sparsifier grad(SparsifierKind::Gradient);
  const std::vector<int> lines{-4, -1, 0, 2, 3};
  std::map<std::string, double> worst;
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix x = random_complex(n, n, rng);
    const ComplexMatrix y = random_complex(n, n, rng);
    const ComplexMatrix g = random_complex(2 * n, n, rng);
    auto track = [&](const std::string& name, Complex lhs, Complex rhs, double scale) {
      worst[name] = std::max(worst[name], std::abs(lhs - rhs) / scale);
    };
    const double s = x.norm() * y.norm();
    track("fft", inner(fft2c(x), y), inner(x, ifft2c(y)), s);
    track("ifft", inner(ifft2c(x), y), inner(x, fft2c(y)), s);
    track("wavelet d4", inner(wav.forward(x), y), inner(x, wav.adjoint(y)), s);
    track("wavelet haar", inner(haar.forward(x), y), inner(x, haar.adjoint(y)), s);
    track("gradient stacked", inner(grad.forward(x), g), inner(x, grad.adjoint(g)), x.norm() * g.norm());

    const RealMatrix a = x.real();
    const RealMatrix dx = y.real();
    const RealMatrix dy = y.imag();
    const GradientPair gp = gradient_fwd(Image(a));
    const double lhs = (gp.dx.array() * dx.array()).sum() + (gp.dy.array() * dy.array()).sum();
    const double rhs = (a.array() * gradient_adjoint(GradientPair{dx, dy}).pixels().array()).sum();
    track("gradient pair", lhs, rhs, a.norm() * y.norm());

    Measurements m;
    m.n = n;
    m.lines = lines;
    m.rows = random_complex(static_cast<int>(lines.size()), n, rng);
    const Measurements fx = measure_kspace(fft2c(x), lines);
    track("subsampled Fourier", inner(fx.rows, m.rows), inner(x, zero_filled(m)), x.norm() * m.rows.norm());
  }
  for (const auto& [name, value] : worst) {
    out.require(value <= 1e-9, "adjoint " + name + ", worst relative gap " + std::to_string(value));
  }

  bool exact = true;
  for (int size = 1; size <= 8; ++size) {
    RealMatrix g = RealMatrix::Identity(size, size);
    for (int i = 0; i + 1 < size; ++i) g(i, i + 1) = -1.0;
    for (int t = 0; t < 10; ++t) {
      const RealMatrix x = random_real(size, rng);
      const GradientPair gp = gradient_fwd(Image(x));
      const RealMatrix ex = g * x;
      const RealMatrix ey = x * g.transpose();
      exact = exact && gp.dx == ex && gp.dy == ey;
    }
  }
  out.require(exact, "gradient equals dense G X and X G^T exactly for n = 1..8");
  return out;
}

Outcome densities() {
  Outcome out;
  std::mt19937_64 rng(202);
  const int n = 16;
  const Image ref(random_real(n, rng).cwiseAbs());
  const KSpace k = fft2_centered(ref);
  const Sparsifier psi(SparsifierKind::Wavelet);
  const auto support = reference_support(ref, psi, default_support_size(n, 0.05));
  std::vector<std::pair<std::string, LinePdf>> all{
      {"f_VD", pdf_vd(n, 1.0)},
      {"f_VDS", pdf_vds(n, 0.7, 1.0)},
      {"f_VDS small cap", pdf_vds(n, 0.1, 0.001)},
      {"f_R", pdf_r(k)},
      {"f_ND", pdf_nd(k.grid(), random_complex(n, n, rng))},
      {"f_A", pdf_a(n, psi, support, 16.0)},
  };
  all.emplace_back("mixture", mix_pdf(all[3].second, all[0].second, 0.4));
  for (const auto& [name, pdf] : all) {
    out.require(std::abs(pdf.sum() - 1.0) <= 1e-9, name + " sums to 1 (gap " + std::to_string(pdf.sum() - 1.0) + ")");
  }

  const LinePdf vd = pdf_vd(4, 1.0);
  const std::vector<double> expected{0.0, 0.25, 0.5, 0.25};
  bool hand = true;
  for (int row = 0; row < 4; ++row) hand = hand && std::abs(vd.at_row(row) - expected[row]) <= 1e-15;
  out.require(hand, "pdf_vd(4, 1) = (0, 0.25, 0.5, 0.25)");

  for (const auto& [name, pdf] : {all[0], all[1], all[3]}) {
    const int draws = 100000;
    std::vector<int> counts(n, 0);
    std::mt19937_64 seeds(7);
    for (int i = 0; i < draws; ++i) {
      SamplerState state(n, seeds());
      ++counts[static_cast<std::size_t>(row_of_line(n, draw_lines(pdf, 1, state)[0]))];
    }
    double gap = 0.0;
    for (int row = 0; row < n; ++row) gap = std::max(gap, std::abs(counts[row] / double(draws) - pdf.at_row(row)));
    out.require(gap <= 0.01, name + " empirical frequency gap " + fmt(gap, 5) + " over 1e5 draws");
  }
  return out;
}

Outcome solver() {
  Outcome out;
  std::mt19937_64 rng(303);
  const int n = 8;
  int instance = 0;
  for (auto kind : {SparsifierKind::Wavelet, SparsifierKind::Gradient}) {
    const Sparsifier psi(kind);
    for (int t = 0; t < 5; ++t, ++instance) {
      const Image truth(random_real(n, rng));
      const ComplexMatrix x0 = truth.as_complex() + 0.2 * random_complex(n, n, rng);
      std::vector<int> all;
      for (int ky = min_line(n); ky <= max_line(n); ++ky) all.push_back(ky);
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(3);
      const Measurements y = measure(truth, SamplingMask(n, all));
      const Weights w = update_weights(random_complex(n, n, rng), x0, psi, 0.1);
      const WeightedOptions opts;
      const SolveResult r = solve_weighted(y, x0, w, psi, opts);
      auto f = [&](const ComplexMatrix& x) { return weighted_objective(x, y, x0, w, psi, opts.lambda, opts.mu); };
      const double final_value = f(r.x);
      bool monotone = true;
      for (std::size_t i = 1; i < r.objective.size(); ++i) {
        monotone = monotone && r.objective[i] <= r.objective[i - 1] + 1e-9;
      }
      const std::string tag = "instance " + std::to_string(instance) + " (" + std::string(to_string(kind)) + ")";
      out.require(final_value <= f(x0), tag + ": final " + fmt(final_value, 6) + " <= x0 " + fmt(f(x0), 6));
      out.require(final_value <= f(zero_filled(y)),
                  tag + ": final <= zero-filled " + fmt(f(zero_filled(y)), 6));
      out.require(monotone && !r.objective.empty(),
                  tag + ": objective non-increasing over " + std::to_string(r.objective.size()) + " iterations");
    }
  }
  return out;
}

Outcome phantom_ordering() {
  Outcome out;
  const ImagePair images = phantom_with_tumor(32);
  ExperimentConfig cfg;
  cfg.trials = 50;
  const std::vector<int> lacs_cases{1, 2, 5, 17, 18, 19};
  const std::vector<int> l1w_cases{11, 12};
  for (double eta : {0.06, 0.12, 0.18}) {
    cfg.eta = eta;
    double worst_lacs = std::numeric_limits<double>::infinity();
    double best_l1w = -std::numeric_limits<double>::infinity();
    std::string row = "eta " + fmt(eta, 2) + ":";
    for (int id : lacs_cases) {
      const double m = run_case(id, images, cfg).mean_rsnr_db;
      worst_lacs = std::min(worst_lacs, m);
      row += " c" + std::to_string(id) + "=" + fmt(m, 2);
    }
    for (int id : l1w_cases) {
      const double m = run_case(id, images, cfg).mean_rsnr_db;
      best_l1w = std::max(best_l1w, m);
      row += " c" + std::to_string(id) + "=" + fmt(m, 2);
    }
    out.notes.push_back("  " + row);
    out.require(worst_lacs > best_l1w, "eta " + fmt(eta, 2) + ": min LACS " + fmt(worst_lacs, 2) + " > max L1-W " +
                                           fmt(best_l1w, 2));
    if (eta == 0.12) {
      out.require(worst_lacs - best_l1w >= 3.0, "eta 0.12 margin " + fmt(worst_lacs - best_l1w, 2) + " dB >= 3");
    }
  }
  return out;
}

Outcome gradient_vs_wavelet() {
  Outcome out;
  const ImagePair images = phantom_with_tumor(32);
  ExperimentConfig cfg;
  cfg.trials = 30;
  cfg.sparsifier = SparsifierKind::Gradient;
  cfg.eta = 0.06;
  const double grad = run_case(17, images, cfg).mean_rsnr_db;
  cfg.sparsifier = SparsifierKind::Wavelet;
  cfg.eta = 0.21;
  const double wav = run_case(17, images, cfg).mean_rsnr_db;
  out.require(grad >= wav, "case 17 gradient at 0.06 " + fmt(grad, 2) + " dB >= wavelet at 0.21 " + fmt(wav, 2) + " dB");
  return out;
}

Outcome pc_sweep() {
  Outcome out;
  const ImagePair images = brain_standin(64);
  ExperimentConfig cfg;
  cfg.case_id = 4;
  cfg.eta = 0.06;
  cfg.trials = 20;
  const std::vector<double> ps = linspace_step(0.1, 1.5, 0.2);
  const std::vector<double> cs{1.0, 0.1, 0.01, 0.001};
  const auto table = sweep_p_c(ps, cs, images, cfg);

  std::map<double, std::map<double, double>> mean;
  for (const auto& pt : table) mean[pt.p][pt.C] = pt.mean_rsnr_db;
  for (const auto& [p, row] : mean) {
    std::string line = "  p=" + fmt(p, 1) + ":";
    for (const auto& [C, m] : row) line += " C" + format_double(C) + "=" + fmt(m, 2);
    out.notes.push_back(line);
  }

  const auto& low = mean.begin()->second;
  const double gap = low.at(1.0) - low.at(0.001);
  out.require(gap >= 2.0, "p=0.1: C=1 minus C=0.001 = " + fmt(gap, 2) + " dB >= 2");

  const auto& high = mean.rbegin()->second;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [C, m] : high) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  out.require(hi - lo <= 1.0, "p=1.5: spread across C = " + fmt(hi - lo, 2) + " dB <= 1");

  double best = -std::numeric_limits<double>::infinity();
  double best_p = 0.0;
  for (const auto& pt : table) {
    if (pt.mean_rsnr_db > best) {
      best = pt.mean_rsnr_db;
      best_p = pt.p;
    }
  }
  out.require(best_p >= 0.5 - 1e-9 && best_p <= 1.5 + 1e-9, "argmax over p = " + fmt(best_p, 1) + " in [0.5, 1.5]");
  return out;
}

Outcome grayscale() {
  Outcome out;
  const ImagePair images = brain_standin(64);
  ExperimentConfig cfg;
  cfg.case_id = 1;
  cfg.trials = 50;

  const auto half = sweep_grayscale({0.5}, linspace_step(0.03, 0.30, 0.03), images, cfg);
  for (const auto& pt : half) {
    out.require(pt.sc_mean >= pt.nsc_mean, "c=0.5 eta " + fmt(pt.eta, 2) + ": SC " + fmt(pt.sc_mean, 2) +
                                               " >= NSC " + fmt(pt.nsc_mean, 2));
  }
  const auto one = sweep_grayscale({1.0}, {0.15}, images, cfg);
  const double diff = std::abs(one[0].sc_mean - one[0].nsc_mean);
  out.require(diff <= 1.0, "c=1 eta 0.15: |SC - NSC| = " + fmt(diff, 4) + " dB <= 1");

  const ComplexMatrix k0 = fft2_centered(images.reference).grid();
  const std::vector<int> lines{-5, 0, 7};
  double worst = 0.0;
  for (double c : {0.25, 0.5, 2.0, 2.5}) {
    const ScaleEstimate est =
        gsc_update(measure_kspace(ComplexMatrix(c * k0), lines), measure_kspace(k0, lines), ScaleEstimate{});
    worst = std::max(worst, std::abs(est.c - c));
  }
  out.require(worst <= 1e-6, "gsc_update one-round error " + std::to_string(worst) + " <= 1e-6");
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& tool) {
  Outcome out;
  if (tool.empty()) {
    out.require(false, "path to lacsmri not given");
    return out;
  }
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> csv;
  for (int run = 0; run < 2; ++run) {
    const auto path = dir / ("lacs_acceptance_det_" + std::to_string(run) + ".csv");
    const std::string cmd = "\"" + tool + "\" run-case --seed 7 --out \"" + path.string() + "\"";
    const int rc = std::system(cmd.c_str());
    out.require(rc == 0, "run " + std::to_string(run + 1) + " exit status " + std::to_string(rc));
    csv.push_back(read_file(path));
    std::filesystem::remove(path);
  }
  out.require(!csv[0].empty() && csv[0] == csv[1],
              "byte-identical CSV (" + std::to_string(csv[0].size()) + " bytes)");
  return out;
}

struct Criterion {
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int id = 0;
  std::string tool;
  app.add_option("criterion", id, "criterion number 1-8")->required()->check(CLI::Range(1, 8));
  app.add_option("--lacsmri", tool, "path to the lacsmri executable");
  CLI11_PARSE(app, argc, argv);

  const std::map<int, Criterion> criteria{
      {1, {"operator correctness", 10.0, operators}},
      {2, {"pdf suite", 30.0, densities}},
      {3, {"solver oracle", 60.0, solver}},
      {4, {"phantom ordering", 600.0, phantom_ordering}},
      {5, {"gradient vs wavelet", 300.0, gradient_vs_wavelet}},
      {6, {"p/C sweep shape", 900.0, pc_sweep}},
      {7, {"grayscale correction", 600.0, grayscale}},
      {8, {"determinism", 60.0, [&] { return determinism(tool); }}},
  };
  const Criterion& c = criteria.at(id);
  const auto start = Clock::now();
  Outcome outcome;
  try {
    outcome = c.run();
  } catch (const std::exception& e) {
    std::cout << "ERROR criterion " << id << ": " << e.what() << '\n';
    return 1;
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  outcome.require(seconds < c.budget_seconds, "runtime " + fmt(seconds, 1) + " s < " + fmt(c.budget_seconds, 0) + " s");
  for (const auto& note : outcome.notes) std::cout << note << '\n';
  std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << c.title << '\n';
  return 0;
}
