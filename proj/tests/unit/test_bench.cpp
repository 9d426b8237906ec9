#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lacs/bench.hpp"
#include "oracles.hpp"

using namespace lacs;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lacs_unit_" + name);
}

// Number of largest coefficients needed to keep `fraction` of the energy.
int coefficients_for_energy(RealMatrix coeffs, double fraction) {
  std::vector<double> e(coeffs.data(), coeffs.data() + coeffs.size());
  for (double& v : e) v *= v;
  std::sort(e.begin(), e.end(), std::greater<>());
  double total = 0.0;
  for (double v : e) total += v;
  double kept = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    kept += e[i];
    if (kept >= fraction * total) return static_cast<int>(i + 1);
  }
  return static_cast<int>(e.size());
}

}  // namespace

TEST_CASE("rsnr") {
  std::mt19937_64 rng(41);
  const Image truth(oracle::random_real(8, rng));
  CHECK(rsnr(truth, truth) == 300.0);
  CHECK(rsnr(truth, truth, 120.0) == 120.0);
  CHECK(rsnr(truth, Image::zeros(8)) == doctest::Approx(0.0));
  CHECK(rsnr(truth, Image(truth.pixels() * 1.01)) == doctest::Approx(40.0));
  CHECK_THROWS_AS(rsnr(Image::zeros(8), truth), Error);
  CHECK_THROWS_AS(rsnr(truth, Image::zeros(4)), Error);
}

TEST_CASE("phantom") {
  PhantomSpec plain;
  const ImagePair same = shepp_logan(plain);
  CHECK(same.reference.pixels() == same.followup.pixels());
  CHECK(same.reference.pixels().maxCoeff() == doctest::Approx(1.0));
  CHECK(same.reference.pixels().minCoeff() >= -1e-12);

  PhantomSpec point;
  point.tumor = Tumor{15.0, 15.0, 0.0, 0.5};
  const ImagePair p = shepp_logan(point);
  CHECK(((p.followup.pixels() - p.reference.pixels()).array() != 0.0).count() <= 1);

  PhantomSpec with;
  with.tumor = PhantomSpec::default_tumor(32);
  const ImagePair t = shepp_logan(with);
  CHECK(((t.followup.pixels() - t.reference.pixels()).array() != 0.0).count() > 0);

  PhantomSpec outside;
  outside.tumor = Tumor{40.0, 3.0, 2.0, 0.3};
  CHECK_THROWS_AS(shepp_logan(outside), Error);

  const Image& img = same.reference;
  const Sparsifier grad(SparsifierKind::Gradient);
  const Sparsifier wav(SparsifierKind::Wavelet);
  const RealMatrix g = grad.forward(img.as_complex()).cwiseAbs();
  const RealMatrix w = wav.forward(img.as_complex()).cwiseAbs();
  CHECK(coefficients_for_energy(g, 0.95) < coefficients_for_energy(w, 0.95));
}

TEST_CASE("brain stand-in") {
  const ImagePair b = brain_standin(64);
  CHECK(b.reference.size() == 64);
  CHECK((b.followup.pixels() - b.reference.pixels()).norm() > 0.0);
  CHECK(b.reference.pixels().minCoeff() >= 0.0);
  CHECK(brain_standin(64).reference.pixels() == b.reference.pixels());
}

TEST_CASE("PGM round trip and errors") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> dist(0, 65535);
  RealMatrix px(32, 32);
  for (Eigen::Index i = 0; i < px.size(); ++i) px.data()[i] = dist(rng);
  const auto path = temp_file("roundtrip.pgm");
  save_image(Image(px), path);
  CHECK(load_image(path).pixels() == px);

  save_image(Image(px / 100.0), path, 100.0);
  CHECK((load_image(path, 100.0).pixels() - px / 100.0).cwiseAbs().maxCoeff() < 1e-12);

  const auto color = temp_file("color.ppm");
  {
    std::ofstream out(color, std::ios::binary);
    out << "P6\n2 2\n255\n" << std::string(12, '\x10');
  }
  try {
    load_image(color);
    FAIL("expected UnsupportedFormat");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFormat);
  }

  const auto wide = temp_file("wide.pgm");
  {
    std::ofstream out(wide, std::ios::binary);
    out << "P5\n# comment line\n64 32\n255\n" << std::string(64 * 32, '\x20');
  }
  try {
    load_image(wide);
    FAIL("expected NonSquareImage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquareImage);
  }

  const auto small = temp_file("eight.pgm");
  {
    std::ofstream out(small, std::ios::binary);
    out << "P5 2 2 255\n" << std::string("\x00\x10\x20\xff", 4);
  }
  const Image eight = load_image(small);
  CHECK(eight(0, 1) == 16.0);
  CHECK(eight(1, 1) == 255.0);

  CHECK_THROWS_AS(load_image(temp_file("missing.pgm")), Error);
  for (const auto& f : {path, color, wide, small}) std::filesystem::remove(f);
}

TEST_CASE("csv writers and reader") {
  CaseResult r;
  r.case_id = 3;
  r.eta = 0.12;
  r.trials = 1;
  r.mean_rsnr_db = 21.5;
  TrialRecord t;
  t.rsnr_db = 21.5;
  t.trace.push_back(RoundTrace{1, 2, 0.25, 10.0, 3.5, 1.0});
  r.per_trial.push_back(t);

  std::stringstream eta;
  write_eta_csv(eta, {r});
  const CsvTable table = read_csv(eta);
  CHECK(table.header == std::vector<std::string>{"case_id", "eta", "trials", "mean_rsnr_db", "std_rsnr_db"});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == "3");
  CHECK(std::stod(table.rows[0][3]) == 21.5);

  std::stringstream cases;
  write_case_csv(cases, {r});
  const CsvTable ct = read_csv(cases);
  CHECK(ct.header.size() == 7);
  CHECK(ct.rows.size() == 1);

  std::stringstream ragged("a,b\n1,2,3\n");
  CHECK_THROWS_AS(read_csv(ragged), Error);
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("experiment runner") {
  PhantomSpec spec;
  spec.tumor = PhantomSpec::default_tumor(32);
  const ImagePair images = shepp_logan(spec);
  ExperimentConfig cfg;
  cfg.trials = 1;
  cfg.seed = 11;

  const CaseResult a = run_case(1, images, cfg);
  const CaseResult b = run_case(1, images, cfg);
  CHECK(a.mean_rsnr_db == b.mean_rsnr_db);
  REQUIRE(a.per_trial.size() == 1);
  CHECK(a.per_trial[0].trace.size() == 3);

  cfg.eta = 1.0;
  for (int id : {2, 11, 13}) CHECK(run_case(id, images, cfg).mean_rsnr_db >= 60.0);

  CHECK(sweep_eta({1}, {}, images, cfg).empty());
  CHECK(linspace_step(0.03, 0.21, 0.03).size() == 7);
  CHECK(linspace_step(0.25, 2.5, 0.25).size() == 10);
  CHECK(linspace_step(0.03, 0.30, 0.03).size() == 10);

  cfg.case_id = 1;
  CHECK_THROWS_AS(sweep_p_c({0.5}, {1.0}, images, cfg), Error);
  cfg.eta = 0.03;
  CHECK_THROWS_AS(run_case(1, images, cfg), Error);
}

TEST_CASE("case 3 beats case 11 on the phantom") {
  PhantomSpec spec;
  spec.tumor = PhantomSpec::default_tumor(32);
  const ImagePair images = shepp_logan(spec);
  ExperimentConfig cfg;
  cfg.eta = 0.12;
  cfg.trials = 8;
  CHECK(run_case(3, images, cfg).mean_rsnr_db > run_case(11, images, cfg).mean_rsnr_db);
}
