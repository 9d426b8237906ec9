#include <doctest.h>

#include "lacs/config.hpp"
#include "lacs/types.hpp"

using namespace lacs;

TEST_CASE("centered line index round trip") {
  for (int n : {1, 2, 5, 8, 32}) {
    for (int row = 0; row < n; ++row) CHECK(row_of_line(n, line_of_row(n, row)) == row);
    CHECK(row_of_line(n, min_line(n)) == 0);
    CHECK(row_of_line(n, max_line(n)) == n - 1);
  }
  CHECK(min_line(4) == -2);
  CHECK(max_line(4) == 1);
}

TEST_CASE("image validation") {
  CHECK_THROWS_AS(Image(RealMatrix::Zero(3, 4)), Error);
  RealMatrix bad = RealMatrix::Zero(2, 2);
  bad(1, 1) = std::nan("");
  try {
    Image img(bad);
    FAIL("expected NonFinitePixel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinitePixel);
  }
  CHECK(Image::constant(3, 2.0)(2, 1) == 2.0);
}

TEST_CASE("sampling mask stays sorted and rejects bad lines") {
  SamplingMask mask(8);
  mask.add(3);
  mask.add(-4);
  mask.add(0);
  CHECK(mask.lines() == std::vector<int>{-4, 0, 3});
  CHECK(mask.contains(0));
  CHECK_FALSE(mask.contains(1));
  CHECK_THROWS_AS(mask.add(4), Error);
  CHECK_THROWS_AS(mask.add(0), Error);
  CHECK(SamplingMask::full(4).size() == 4);
}

TEST_CASE("line pdf construction") {
  const auto pdf = LinePdf::from_weights({1.0, 3.0});
  CHECK(pdf.at_row(0) == doctest::Approx(0.25));
  CHECK(pdf.at(0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(LinePdf::from_weights({0.0, 0.0}), Error);
  CHECK_THROWS_AS(LinePdf::from_weights({-1.0, 2.0}), Error);
  CHECK_THROWS_AS(LinePdf::from_probabilities({0.5, 0.4}), Error);
  CHECK(LinePdf::uniform(4).sum() == doctest::Approx(1.0));
}

TEST_CASE("case table") {
  const CaseSpec c1 = case_lookup(1);
  CHECK(c1.variable_density == DensityKind::VD);
  CHECK(c1.adaptive_density == DensityKind::R);
  CHECK(c1.algorithm == Algorithm::LacsMri);

  const CaseSpec c12 = case_lookup(12);
  CHECK(c12.variable_density == DensityKind::VDS);
  CHECK_FALSE(c12.adaptive_density.has_value());
  CHECK(c12.algorithm == Algorithm::L1W);

  const CaseSpec c22 = case_lookup(22);
  CHECK_FALSE(c22.variable_density.has_value());
  CHECK(c22.adaptive_density == DensityKind::ND);
  CHECK(c22.algorithm == Algorithm::L1W);

  for (int id = 1; id <= kNumCases; ++id) {
    const CaseSpec c = case_lookup(id);
    CHECK(c.case_id == id);
    CHECK((c.variable_density || c.adaptive_density));
  }
  try {
    case_lookup(23);
    FAIL("expected UnknownCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCase);
  }
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.case_id = 1;
  cfg.eta = 0.12;
  cfg.num_iterations = 3;
  CHECK_FALSE(validate_config(cfg, 32).has_value());

  cfg.eta = 0.03;
  auto issue = validate_config(cfg, 32);
  REQUIRE(issue.has_value());
  CHECK(issue->code == ErrorCode::TooFewLinesPerRound);

  cfg.eta = 0.0;
  REQUIRE(validate_config(cfg, 32).has_value());
  CHECK(validate_config(cfg, 32)->code == ErrorCode::EtaOutOfRange);

  cfg.eta = 0.12;
  cfg.case_id = 23;
  REQUIRE(validate_config(cfg, 32).has_value());
  CHECK(validate_config(cfg, 32)->code == ErrorCode::UnknownCase);

  CHECK(lines_per_round(0.12, 32, 3) == 2);
  CHECK(lines_per_round(1.0, 32, 3) == 11);
}

TEST_CASE("config text round trip") {
  ExperimentConfig cfg;
  cfg.case_id = 17;
  cfg.eta = 0.21;
  cfg.sparsifier = SparsifierKind::Gradient;
  cfg.wavelet = WaveletFamily::Haar;
  cfg.grayscale_c = 0.5;
  cfg.trace_budget = 12.5;
  cfg.seed = 123456789012345ULL;
  CHECK(parse_config(format_config(cfg)) == cfg);

  const auto parsed = parse_config("# comment\n eta = 0.18 \nlambda=2 # trailing\n\n");
  CHECK(parsed.eta == 0.18);
  CHECK(parsed.lambda == 2.0);
  CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("eta = fast\n"), Error);
  CHECK_THROWS_AS(parse_config("eta 0.1\n"), Error);
}
