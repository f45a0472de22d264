#include "tilebill/classifier.hpp"
#include "tilebill/constructions.hpp"
#include "tilebill/session.hpp"
#include "tilebill/verify.hpp"

#include <gtest/gtest.h>

using namespace tilebill;

namespace {

constexpr double kDeg = kPi / 180.0;

const LineArrangement& as_arrangement(const Tiling& t) { return dynamic_cast<const LineArrangement&>(t); }

}  // namespace

TEST(Classify, SquareZigZagDrifts) {
  auto t = make_tiling(TilingSpec::square());
  const auto c = classify(*t, t->canonicalize_state(EdgeRef{0, 0, 0}, 0.5, 1.5707963).state, 100);
  EXPECT_EQ(c.kind, ClassKind::drift_periodic);
  EXPECT_EQ(c.period, 2);
  // Two crossings advance two cells: the state repeats on the edge two rows up.
  EXPECT_LT((c.drift - Vec2(0, 2)).norm(), 1e-12);
}

TEST(Classify, WitnessReplays) {
  auto t = make_tiling(TilingSpec::equilateral());
  Rng rng(2);
  const Trajectory tr = trace(*t, random_edge_start(*t, rng), 200);
  const auto c = classify_trajectory(*t, tr);
  ASSERT_EQ(c.kind, ClassKind::periodic);
  EXPECT_EQ(c.period, 6);
  EXPECT_EQ(c.repeat_index - c.first_index, 6);
  EXPECT_LT(c.residual, c.eps_match);
  EXPECT_NEAR(state_residual(*t, tr.state(c.first_index), tr.state(c.repeat_index), false), c.residual, 1e-15);
}

TEST(Classify, PerpendicularLinesGoodStartsPeriodFour) {
  auto t = make_tiling(*tiling_preset("two_lines_perpendicular"));
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto g = sample_good_start(as_arrangement(*t), rng, 1000);
    ASSERT_TRUE(g.has_value());
    const auto c = classify_trajectory(*t, g->trace);
    EXPECT_EQ(c.kind, ClassKind::periodic);
    EXPECT_EQ(c.period, 4);
  }
}

TEST(Classify, EightyEightDegreesSpiralsThenEscapes) {
  auto t = make_tiling(*tiling_preset("two_lines_88deg"));
  const TrajectoryState s = t->state_from_point(Point2(3, 0), 1.7).state;
  const Trajectory tr = trace(*t, s, 10000);
  const auto c = classify_trajectory(*t, tr);
  EXPECT_EQ(c.kind, ClassKind::escaped);
  ASSERT_TRUE(c.spiral.has_value());
  EXPECT_NEAR(c.spiral->delta / kDeg, -8.0, 1e-9);
  EXPECT_GE(c.spiral->cycles, 10);
  EXPECT_FALSE(c.spiral->alternating);
  // Independent of the witness: the crossing angle drops 8 degrees per return.
  const auto theta = crossing_angles(as_arrangement(*t), tr);
  for (int k = 0; k < 10; ++k) EXPECT_NEAR((theta[4 * (k + 1)] - theta[4 * k]) / kDeg, -8.0, 1e-9 * (k + 1));
}

TEST(Classify, OddPeriodicStartIsPeriodicAndPerturbedSpirals) {
  const auto c = odd_lines_periodic(std::vector<double>{0.9, 1.1, kPi - 2.0});
  auto t = make_tiling(c.spec);
  const auto& arr = as_arrangement(*t);
  EXPECT_TRUE(matches(c.expected, classify(*t, c.start, 1000)));
  for (double eps : {1e-3, -1e-3, 1e-5}) {
    const TrajectoryState s = t->canonicalize_state(c.start.edge, c.start.t, c.start.dir + eps).state;
    const Trajectory tr = trace(*t, s, 100000);
    const auto w = detect_spiral(arr, tr);
    ASSERT_TRUE(w.has_value()) << eps;
    EXPECT_TRUE(w->alternating);
    EXPECT_GE(w->cycles, 5);
    EXPECT_NEAR(std::abs(w->delta), 2 * std::abs(eps), 1e-9);
  }
}

TEST(Classify, IsoscelesStartsAreRecurrent) {
  auto t = make_tiling(TilingSpec::isosceles(kPi / 5));
  Rng rng(6);
  for (int k = 0; k < 30; ++k) {
    const auto c = classify(*t, random_edge_start(*t, rng), 10000);
    EXPECT_TRUE(c.kind == ClassKind::periodic || c.kind == ClassKind::drift_periodic) << to_string(c.kind);
  }
}

TEST(Classify, ShortBudgetIsUnknown) {
  const auto c24 = trihex_period24();
  auto t = make_tiling(c24.spec);
  EXPECT_EQ(classify(*t, c24.start, 20).kind, ClassKind::unknown);
  EXPECT_EQ(classify(*t, c24.start, 60).kind, ClassKind::periodic);
  EXPECT_THROW(classify(*t, c24.start, 1), std::invalid_argument);
}

TEST(Classify, CornerHitIsReported) {
  auto t = make_tiling(TilingSpec::square());
  const auto c = classify(*t, t->canonicalize_state(EdgeRef{0, 0, 0}, 0.5, std::atan2(1.0, 0.5)).state, 100);
  EXPECT_EQ(c.kind, ClassKind::corner_hit);
}

TEST(EscapeCertificate, HypotenuseMidpointEscapes) {
  for (double a : {kPi / 8, 0.3, 1.0}) {
    const auto c = right_triangle_bisecting_escape(a);
    auto t = make_tiling(c.spec);
    const Trajectory tr = trace(*t, c.start, 10000);
    EXPECT_TRUE(escape_certificate_right_triangle(*t, tr)) << a;
    // pi/8 = pi/(2*4) closes up to a translation; the others never repeat.
    EXPECT_EQ(classify_trajectory(*t, tr).kind, a == kPi / 8 ? ClassKind::drift_periodic : ClassKind::escaped);
  }
}

TEST(EscapeCertificate, PeriodSixOrbitFails) {
  const auto c = triangle_period6(TilingSpec::right_triangle(0.4));
  auto t = make_tiling(c.spec);
  const Trajectory tr = trace(*t, c.start, 200);
  EXPECT_FALSE(escape_certificate_right_triangle(*t, tr));
  EXPECT_TRUE(matches(c.expected, classify_trajectory(*t, tr)));
  EXPECT_THROW(escape_certificate_right_triangle(*make_tiling(TilingSpec::square()), tr), std::invalid_argument);
}

TEST(ClassKindNames, RoundTrip) {
  for (auto k : {ClassKind::periodic, ClassKind::drift_periodic, ClassKind::escaped, ClassKind::spiraling,
                 ClassKind::corner_hit, ClassKind::unknown})
    EXPECT_EQ(parse_class_kind(to_string(k)), k);
  EXPECT_FALSE(parse_class_kind("chaotic").has_value());
}

TEST(StateResidual, DifferentEdgesAreInfinitelyFar) {
  auto t = make_tiling(TilingSpec::square());
  const auto a = t->canonicalize_state(EdgeRef{0, 0, 0}, 0.5, 1.0).state;
  const auto b = t->canonicalize_state(EdgeRef{0, 0, 1}, 0.5, 0.2).state;
  EXPECT_TRUE(std::isinf(state_residual(*t, a, b, false)));
  const auto c = t->canonicalize_state(EdgeRef{4, 1, 0}, 0.5, 1.0).state;
  EXPECT_TRUE(std::isinf(state_residual(*t, a, c, false)));
  EXPECT_LT(state_residual(*t, a, c, true), 1e-12);
}
