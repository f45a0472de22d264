#include "tilebill/geom.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace tilebill;

namespace {

constexpr double kDeg = kPi / 180.0;

Line through_origin(double angle) { return Line::through_point(Point2::Zero(), angle); }

// Reflection as an explicit 2x2 matrix about a unit direction u, with the
// line through p: x -> p + R (x - p), R = 2 u u^T - I.
Point2 matrix_reflect(const Point2& x, const Point2& p, double angle) {
  const Vec2 u(std::cos(angle), std::sin(angle));
  const Eigen::Matrix2d r = 2.0 * u * u.transpose() - Eigen::Matrix2d::Identity();
  return p + r * (x - p);
}

}  // namespace

TEST(ReflectPoint, AxisReflection) {
  const Point2 q = reflect_point(Point2(1, 1), through_origin(0.0));
  EXPECT_NEAR(q.x(), 1.0, 1e-15);
  EXPECT_NEAR(q.y(), -1.0, 1e-15);
}

TEST(ReflectPoint, PointOnLineIsFixed) {
  const Line l = Line::through_point(Point2(2, 3), 0.7);
  const Point2 p = Point2(2, 3) + 1.5 * l.direction();
  EXPECT_LT((reflect_point(p, l) - p).norm(), 1e-14);
}

TEST(ReflectPoint, DiagonalSwapsCoordinates) {
  const Point2 q = reflect_point(Point2(0.3, 0.7), through_origin(kPi / 4));
  EXPECT_NEAR(q.x(), 0.7, 1e-15);
  EXPECT_NEAR(q.y(), 0.3, 1e-15);
}

TEST(ReflectPoint, RandomInvolutionAndMatrixOracle) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 500; ++k) {
    const Point2 p(u(gen), u(gen)), x(u(gen), u(gen));
    const double a = u(gen);
    const Line l = Line::through_point(p, a);
    const Point2 y = reflect_point(x, l);
    EXPECT_LT((reflect_point(y, l) - x).norm(), 1e-12);
    EXPECT_LT((y - matrix_reflect(x, p, a)).norm(), 1e-12);
    EXPECT_NEAR(l.signed_distance(y), -l.signed_distance(x), 1e-12);
  }
}

TEST(ReflectDirection, Examples) {
  const Line h = through_origin(0.0);
  EXPECT_NEAR(reflect_direction(kPi / 3, h), kTwoPi - kPi / 3, 1e-15);
  EXPECT_NEAR(circular_distance(reflect_direction(0.0, h), 0.0), 0.0, 1e-15);
  EXPECT_NEAR(circular_distance(reflect_direction(kPi / 2, through_origin(kPi / 4)), 0.0), 0.0, 1e-15);
}

TEST(ReflectDirection, MatchesMatrixOracle) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int k = 0; k < 500; ++k) {
    const double d = u(gen), a = u(gen);
    const Vec2 v = matrix_reflect(direction_vector(d), Point2::Zero(), a);
    EXPECT_LT(circular_distance(reflect_direction(d, through_origin(a)), angle_of(v)), 1e-12);
  }
}

TEST(RefractDirection, KeepsNormalComponent) {
  const Line l = through_origin(0.4);
  for (double d : {0.1, 1.0, 2.5, 4.0, 5.9}) {
    const Vec2 in = direction_vector(d), out = direction_vector(refract_direction(d, l));
    EXPECT_NEAR(in.dot(l.normal), out.dot(l.normal), 1e-14);
    EXPECT_NEAR(in.dot(l.direction()), -out.dot(l.direction()), 1e-14);
  }
}

TEST(Intersect, ParallelLinesHaveNone) {
  EXPECT_FALSE(intersect(through_origin(0.3), Line::through_point(Point2(0, 1), 0.3)).has_value());
  const auto p = intersect(through_origin(0.0), Line::through_point(Point2(2, 5), kPi / 2));
  ASSERT_TRUE(p.has_value());
  EXPECT_LT((*p - Point2(2, 0)).norm(), 1e-14);
}

TEST(ComposeReflections, PerpendicularLinesGiveHalfTurn) {
  const std::vector<Line> lines{through_origin(0.0), through_origin(kPi / 2)};
  const Isometry iso = compose_reflections<double>(lines);
  EXPECT_EQ(iso.kind, IsometryKind::rotation);
  EXPECT_NEAR(iso.angle, kPi, 1e-12);
  EXPECT_LT(iso.center.norm(), 1e-12);
  EXPECT_EQ(compose_isometries(iso, iso).kind, IsometryKind::identity);
}

TEST(ComposeReflections, SingleLineIsReflection) {
  const Line l = Line::through_point(Point2(1, 2), 0.8);
  const std::vector<Line> lines{l};
  const Isometry iso = compose_reflections<double>(lines);
  EXPECT_EQ(iso.kind, IsometryKind::reflection);
  EXPECT_NEAR(circular_distance(2.0 * iso.axis.angle(), 2.0 * l.angle()), 0.0, 1e-12);
  EXPECT_NEAR(iso.axis.signed_distance(Point2(1, 2)), 0.0, 1e-12);
}

// Four concurrent lines: the product of reflections across lines at angles
// a1..a4 (applied in order) is the rotation by 2(a2 - a1) + 2(a4 - a3).
TEST(ComposeReflections, FourConcurrentLinesMatchMatrixProduct) {
  const std::vector<double> angles{0.0, 20 * kDeg, 90 * kDeg, 110 * kDeg};
  std::vector<Line> lines;
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  for (double a : angles) {
    lines.push_back(through_origin(a));
    const Vec2 u(std::cos(a), std::sin(a));
    m = (2.0 * u * u.transpose() - Eigen::Matrix2d::Identity()) * m;
  }
  const Isometry iso = compose_reflections<double>(lines);
  EXPECT_EQ(iso.kind, IsometryKind::rotation);
  EXPECT_NEAR(iso.angle, 80 * kDeg, 1e-12);
  EXPECT_LT((iso.linear() - m).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ComposeReflections, FourConcurrentLinesHalfTurn) {
  std::vector<Line> lines;
  for (double a : {0.0, 20 * kDeg, 90 * kDeg, 160 * kDeg}) lines.push_back(through_origin(a));
  const Isometry iso = compose_reflections<double>(lines);
  EXPECT_EQ(iso.kind, IsometryKind::rotation);
  EXPECT_NEAR(iso.angle, kPi, 1e-12);
  EXPECT_EQ(compose_isometries(iso, iso).kind, IsometryKind::identity);
}

TEST(ComposeReflections, EmptyThrows) {
  EXPECT_THROW(compose_reflections<double>(std::span<const Line>{}), std::invalid_argument);
}

TEST(ClassifyIsometry, Identity) {
  EXPECT_EQ(classify_isometry(identity_affine<double>()).kind, IsometryKind::identity);
}

TEST(ClassifyIsometry, PureShift) {
  Affine2 m = identity_affine<double>();
  m(0, 2) = 1.0;
  const Isometry iso = classify_isometry(m);
  EXPECT_EQ(iso.kind, IsometryKind::translation);
  EXPECT_LT((iso.vector - Vec2(1, 0)).norm(), 1e-15);
  EXPECT_NEAR(std::abs(iso.fixed_direction().y()), 0.0, 1e-15);
}

TEST(ClassifyIsometry, ParallelReflectionsTranslateByTwiceTheOffset) {
  const std::vector<Line> lines{through_origin(0.3), Line::through_point(0.25 * Vec2(-std::sin(0.3), std::cos(0.3)), 0.3)};
  const Isometry iso = compose_reflections<double>(lines);
  EXPECT_EQ(iso.kind, IsometryKind::translation);
  EXPECT_NEAR(iso.vector.norm(), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(iso.vector.dot(lines[0].normal)), 0.5, 1e-12);
}

TEST(ClassifyIsometry, GlideReflection) {
  const std::vector<Line> lines{through_origin(0.0), through_origin(kPi / 2),
                                Line::through_point(Point2(1, 0), kPi / 2)};
  const Isometry iso = compose_reflections<double>(lines);
  EXPECT_EQ(iso.kind, IsometryKind::glide);
  // Check the decoded form reproduces the map on sample points.
  for (const Point2& p : {Point2(0.3, 0.4), Point2(-2, 5), Point2(7, -1)}) {
    const Point2 via = reflect_point(p, iso.axis) + iso.shift * iso.axis.direction();
    EXPECT_LT((via - iso.apply(p)).norm(), 1e-12);
  }
}

TEST(ClassifyIsometry, RotationCenterIsFixed) {
  const std::vector<Line> lines{Line::through_point(Point2(1, 1), 0.2), Line::through_point(Point2(1, 1), 1.3)};
  const Isometry iso = compose_reflections<double>(lines);
  EXPECT_EQ(iso.kind, IsometryKind::rotation);
  EXPECT_LT((iso.center - Point2(1, 1)).norm(), 1e-12);
  EXPECT_NEAR(iso.angle, 2 * 1.1, 1e-12);
}

TEST(ClassifyIsometry, RejectsNonOrthogonal) {
  Affine2 m = identity_affine<double>();
  m(0, 0) = 2.0;
  EXPECT_THROW(classify_isometry(m), std::invalid_argument);
}

TEST(Angles, Normalization) {
  EXPECT_NEAR(normalize_direction(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(normalize_line_angle(kPi + 0.25), 0.25, 1e-15);
  EXPECT_NEAR(circular_difference(0.1, kTwoPi - 0.1), 0.2, 1e-15);
  EXPECT_NEAR(angle_between(Vec2(1, 0), Vec2(-1, 1)), 3 * kPi / 4, 1e-15);
}

TEST(Angles, WorksWithLongDouble) {
  using L = long double;
  const LineT<L> l = LineT<L>::through_point(Vec2T<L>(0, 0), L(0));
  EXPECT_NEAR(static_cast<double>(reflect_direction(L(1), l)), kTwoPi - 1.0, 1e-15);
}
