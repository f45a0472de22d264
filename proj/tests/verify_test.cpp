#include "tilebill/constructions.hpp"
#include "tilebill/verify.hpp"

#include <gtest/gtest.h>

using namespace tilebill;

TEST(Rng, SeededStreamIsFixed) {
  Rng a(1), b(1), c(2);
  for (int k = 0; k < 100; ++k) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NE(Rng(1).uniform(), c.uniform());
  // First draw of mt19937_64 seeded with 1, top 53 bits.
  EXPECT_EQ(Rng(1).uniform(), static_cast<double>(std::mt19937_64(1)() >> 11) * 0x1.0p-53);
}

TEST(Verify, UnknownIdThrows) { EXPECT_THROW(verify_theorem("no_such_theorem"), std::invalid_argument); }

TEST(Verify, IdsAreUnique) {
  auto ids = theorem_ids();
  EXPECT_EQ(ids.size(), 21u);
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
}

TEST(Verify, SameSeedGivesByteIdenticalReports) {
  for (const char* id : {"mf_regular_tilings", "ek_two_lines", "iso_classification", "trihex_lemma_turner"}) {
    VerifyConfig cfg;
    cfg.seed = 17;
    cfg.samples = 8;
    const std::string a = to_json(verify_theorem(id, cfg)).dump(2);
    const std::string b = to_json(verify_theorem(id, cfg)).dump(2);
    EXPECT_EQ(a, b) << id;
    EXPECT_EQ(to_text(verify_theorem(id, cfg)), to_text(verify_theorem(id, cfg))) << id;
  }
}

TEST(Verify, SeedChangesSampledCases) {
  VerifyConfig a, b;
  a.seed = 1;
  b.seed = 2;
  a.samples = b.samples = 5;
  EXPECT_NE(to_json(verify_theorem("mf_regular_tilings", a)).dump(), to_json(verify_theorem("mf_regular_tilings", b)).dump());
}

TEST(Verify, SmallRunsPass) {
  VerifyConfig cfg;
  cfg.samples = 5;
  for (const char* id : {"mf_regular_tilings", "ek_three_lines", "odd_lines_2n", "iso_period_bounds",
                         "trihex_lemma_quadrilateral", "trihex_lemma_quad_triangle", "trihex_lemma_pentagon"}) {
    const auto rep = verify_theorem(id, cfg);
    EXPECT_TRUE(rep.pass) << to_text(rep);
  }
}

TEST(Verify, ReportShape) {
  VerifyConfig cfg;
  cfg.samples = 3;
  const Json j = to_json(verify_theorem("mf_regular_tilings", cfg));
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["theorem"], "mf_regular_tilings");
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["cases_total"], 12);
  EXPECT_EQ(j["cases_failed"], 0);
  for (const Json& c : j["cases"]) {
    ASSERT_TRUE(c.contains("replay"));
    EXPECT_TRUE(c["replay"].contains("tiling"));
    EXPECT_TRUE(c["replay"].contains("start"));
    EXPECT_TRUE(c["replay"].contains("max_steps"));
  }
}

TEST(Verify, FailingCaseCarriesReplay) {
  // A budget too short to close the orbit must fail with the start recorded.
  VerifyConfig cfg;
  cfg.max_steps = 10;
  const auto rep = verify_theorem("trihex_period24", cfg);
  EXPECT_FALSE(rep.pass);
  const auto bad = std::find_if(rep.cases.begin(), rep.cases.end(), [](const CaseOutcome& c) { return !c.pass; });
  ASSERT_NE(bad, rep.cases.end());
  EXPECT_FALSE(bad->replay.is_null());
  EXPECT_FALSE(bad->note.empty());
  auto t = make_tiling(tiling_spec_from_json(bad->replay["tiling"]));
  EXPECT_NO_THROW(start_from_json(bad->replay["start"], *t));
}

TEST(FoldOracle, PredictsEquilateralAndSquare) {
  auto t = make_tiling(TilingSpec::equilateral());
  Rng rng(3);
  const Trajectory tr = trace(*t, random_edge_start(*t, rng), 100);
  const auto f = fold_oracle(*t, tr);
  EXPECT_LT(f.residual, 1e-9);
  EXPECT_EQ(f.period, 6);
  EXPECT_FALSE(f.drift);
  auto sq = make_tiling(TilingSpec::square());
  const Trajectory zig = trace(*sq, sq->canonicalize_state(EdgeRef{0, 0, 0}, 0.5, kPi / 2).state, 50);
  EXPECT_TRUE(fold_oracle(*sq, zig).drift);
}

TEST(DriftSpacings, MatchClosedForm) {
  for (int n : {2, 3, 5}) {
    const auto c = trihex_drift_12n_minus_6(n);
    auto t = make_tiling(c.spec);
    const auto gaps = drift_spacings(*t, trace(*t, c.start, 12 * n), n);
    ASSERT_FALSE(gaps.empty());
    for (double g : gaps) EXPECT_NEAR(g, 1.0 / (2 * n - 1), 1e-9);
  }
}

TEST(GoodStarts, NoneWithTooSharpAnAngle) {
  const double a = 40 * kPi / 180;
  auto t = make_tiling(TilingSpec::line_arrangement({{0.0, Point2::Zero()}, {a, Point2::Zero()}}));
  Rng rng(1);
  EXPECT_FALSE(sample_good_start(dynamic_cast<const LineArrangement&>(*t), rng, 500, 300).has_value());
}

TEST(RandomArrangement, IsSimpleAndSpread) {
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const TilingSpec s = random_arrangement(5, rng);
    ASSERT_EQ(s.lines.size(), 5u);
    auto t = make_tiling(s);
    for (double a : dynamic_cast<const LineArrangement&>(*t).alphas()) EXPECT_GE(a, 0.15 - 1e-12);
  }
}

TEST(Scan, EquilateralIsAllPeriodSix) {
  ScanConfig cfg;
  cfg.t_samples = 5;
  cfg.dir_samples = 7;
  cfg.max_steps = 200;
  const ScanResult r = scan(TilingSpec::equilateral(), cfg);
  ASSERT_EQ(r.periodic_hist.size(), 1u);
  EXPECT_EQ(r.periodic_hist.begin()->first, 6);
  // From the midpoint of an edge the straight-down direction hits the
  // opposite corner, once per edge slot.
  EXPECT_EQ(r.kinds.at("corner_hit"), 3);
  EXPECT_EQ(r.periodic_hist.begin()->second, r.starts - 3);
  EXPECT_TRUE(r.drift_hist.empty());
}

TEST(Scan, DeterministicOutput) {
  ScanConfig cfg;
  cfg.t_samples = 4;
  cfg.dir_samples = 6;
  cfg.max_steps = 500;
  const auto spec = TilingSpec::triangle(0.5, 1.0);
  EXPECT_EQ(to_json(scan(spec, cfg)).dump(), to_json(scan(spec, cfg)).dump());
  const std::string csv = to_csv(scan(spec, cfg));
  EXPECT_EQ(csv.rfind("kind,period,", 0), 0u);
  EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 1);
}

TEST(Scan, RejectsArrangements) {
  EXPECT_THROW(scan(TilingSpec::line_arrangement({{0.0, Point2::Zero()}, {1.0, Point2::Zero()}})), std::exception);
}
