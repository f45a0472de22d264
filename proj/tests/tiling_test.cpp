#include "tilebill/line_arrangement.hpp"
#include "tilebill/periodic_tiling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace tilebill;

namespace {

std::vector<TilingSpec> periodic_specs() {
  return {TilingSpec::square(),         TilingSpec::regular_hexagon(),   TilingSpec::equilateral(),
          TilingSpec::kaleidoscope(),   TilingSpec::trihexagonal(),      TilingSpec::triangle(0.5, 1.0),
          TilingSpec::isosceles(kPi / 5), TilingSpec::right_triangle(0.4), TilingSpec::triangle(8 * kPi / 180, 79 * kPi / 180)};
}

bool inside_convex(const std::vector<Point2>& poly, const Point2& p, double eps) {
  for (std::size_t k = 0; k < poly.size(); ++k)
    if (cross2(poly[(k + 1) % poly.size()] - poly[k], p - poly[k]) < -eps) return false;
  return true;
}

std::uint64_t brute_mask(const LineArrangement& arr, const Point2& p) {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < arr.size(); ++k)
    if (arr.lines()[k].signed_distance(p) > 0.0) m |= std::uint64_t{1} << k;
  return m;
}

TilingSpec five_lines() {
  return TilingSpec::line_arrangement({{0.1, Point2(0, 0)},
                                       {0.9, Point2(1, 0.5)},
                                       {1.7, Point2(-0.5, 1)},
                                       {2.3, Point2(0.3, -0.8)},
                                       {2.9, Point2(-1, -0.2)}});
}

}  // namespace

TEST(Locate, SquareCellCenter) {
  auto t = make_tiling(TilingSpec::square());
  EXPECT_EQ(t->locate(Point2(0.5, 0.5)), (TileRef{0, 0, 0}));
  EXPECT_EQ(t->locate(Point2(3.5, -6.5)), (TileRef{3, -7, 0}));
}

TEST(Locate, TrihexHexagonCenter) {
  auto t = make_tiling(TilingSpec::trihexagonal());
  const auto names = t->tile_slot_names();
  const TileRef r = t->locate(Point2::Zero());
  EXPECT_EQ(names.at(r.slot), "hexagon");
  EXPECT_EQ(r.i, 0);
  EXPECT_EQ(r.j, 0);
  const TileRef s = t->locate(Point2(2.0 * 3 + 1.0 * 2, std::sqrt(3.0) * 2));
  EXPECT_EQ(names.at(s.slot), "hexagon");
  EXPECT_EQ(s, (TileRef{3, 2, r.slot}));
}

TEST(Locate, ArrangementMatchesSignVectorOracle) {
  auto t = make_tiling(five_lines());
  const auto& arr = dynamic_cast<const LineArrangement&>(*t);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int k = 0; k < 2000; ++k) {
    const Point2 p(u(gen), u(gen));
    EXPECT_EQ(t->locate(p).i, static_cast<std::int64_t>(brute_mask(arr, p)));
  }
  // Far exterior: the face is unbounded and bounded by exactly two lines.
  const Point2 far(1e4, 3e3);
  const auto sides = t->tile_boundary(t->locate(far));
  ASSERT_EQ(sides.size(), 2u);
  EXPECT_FALSE(sides[0].piece.bounded());
  EXPECT_FALSE(sides[1].piece.bounded());
}

TEST(Locate, PeriodicPointsLieInTheirPolygon) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-20, 20);
  for (const auto& spec : periodic_specs()) {
    auto t = make_tiling(spec);
    const auto& pt = dynamic_cast<const PeriodicTiling&>(*t);
    int checked = 0;
    for (int k = 0; k < 400; ++k) {
      const Point2 p(u(gen), u(gen));
      try {
        const TileRef r = t->locate(p);
        EXPECT_TRUE(inside_convex(pt.polygon(r), p, 1e-9)) << to_string(spec.variant);
        ++checked;
      } catch (const OnBoundary&) {
      }
    }
    EXPECT_GT(checked, 390) << to_string(spec.variant);
  }
}

TEST(Locate, BoundaryPointsThrow) {
  auto sq = make_tiling(TilingSpec::square());
  EXPECT_THROW(sq->locate(Point2(0.5, 0.0)), OnBoundary);
  EXPECT_THROW(sq->locate(Point2(2.0, 2.3)), OnBoundary);
  auto tri = make_tiling(TilingSpec::trihexagonal());
  EXPECT_THROW(tri->locate(Point2(0.75, std::sqrt(3.0) / 4)), OnBoundary);
  auto arr = make_tiling(five_lines());
  EXPECT_THROW(arr->locate(Point2(5.0, 5.0 * std::tan(0.1))), OnBoundary);
}

TEST(TileBoundary, TrihexHexagonHasSixUnitEdges) {
  auto t = make_tiling(TilingSpec::trihexagonal());
  const auto sides = t->tile_boundary(t->locate(Point2::Zero()));
  ASSERT_EQ(sides.size(), 6u);
  for (const auto& s : sides) {
    EXPECT_NEAR(s.piece.hi - s.piece.lo, 1.0, 1e-12);
    EXPECT_EQ(t->tile_slot_names().at(s.neighbor.slot).find("triangle") != std::string::npos, true);
  }
}

TEST(TileBoundary, RightTriangleLowerTile) {
  auto t = make_tiling(TilingSpec::right_triangle(0.4));
  const auto names = t->edge_slot_names();
  const auto sides = t->tile_boundary(TileRef{0, 0, 0});
  ASSERT_EQ(sides.size(), 3u);
  std::vector<std::string> got;
  for (const auto& s : sides) {
    got.push_back(names.at(s.edge.slot));
    const Vec2 d = s.piece.direction;
    if (names.at(s.edge.slot) == "horizontal") {
      EXPECT_NEAR(d.y(), 0.0, 1e-14);
    } else if (names.at(s.edge.slot) == "vertical") {
      EXPECT_NEAR(d.x(), 0.0, 1e-14);
    } else {
      // Hypotenuses run along negative diagonals.
      EXPECT_LT(d.x() * d.y(), 0.0);
    }
  }
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"horizontal", "hypotenuse", "vertical"}));
}

TEST(TileBoundary, TwoLinesUnboundedFaceHasTwoRays) {
  auto t = make_tiling(TilingSpec::line_arrangement({{0.0, Point2::Zero()}, {1.0, Point2::Zero()}}));
  const auto sides = t->tile_boundary(t->locate(Point2(5, 1)));
  ASSERT_EQ(sides.size(), 2u);
  for (const auto& s : sides) EXPECT_TRUE(std::isfinite(s.piece.lo) != std::isfinite(s.piece.hi));
}

TEST(TileBoundary, SidesAreSharedWithNeighbors) {
  std::vector<TilingSpec> specs = periodic_specs();
  specs.push_back(five_lines());
  for (const auto& spec : specs) {
    auto t = make_tiling(spec);
    std::vector<TileRef> tiles;
    if (spec.is_arrangement()) {
      std::mt19937_64 gen(9);
      std::uniform_real_distribution<double> u(-6, 6);
      for (int k = 0; k < 60; ++k) tiles.push_back(t->locate(Point2(u(gen), u(gen))));
    } else {
      const auto& pt = dynamic_cast<const PeriodicTiling&>(*t);
      for (std::size_t s = 0; s < pt.tile_slots(); ++s) tiles.push_back({1, -2, static_cast<int>(s)});
    }
    for (const TileRef& tile : tiles) {
      for (const auto& side : t->tile_boundary(tile)) {
        const auto [a, b] = t->edge_tiles(side.edge);
        EXPECT_TRUE((a == tile && b == side.neighbor) || (b == tile && a == side.neighbor)) << to_string(spec.variant);
        bool found = false;
        for (const auto& back : t->tile_boundary(side.neighbor))
          if (back.edge == side.edge) {
            found = true;
            if (side.piece.bounded()) {
              // Same segment, opposite CCW orientation.
              EXPECT_LT((back.piece.at(back.piece.lo) - side.piece.at(side.piece.hi)).norm(), 1e-9);
              EXPECT_LT((back.piece.at(back.piece.hi) - side.piece.at(side.piece.lo)).norm(), 1e-9);
            }
          }
        EXPECT_TRUE(found) << to_string(spec.variant);
        if (t->two_colorable()) {
          EXPECT_NE(t->tile_color(tile), t->tile_color(side.neighbor));
        }
      }
    }
  }
}

TEST(TwoColoring, ExpectedTilings) {
  EXPECT_TRUE(make_tiling(TilingSpec::square())->two_colorable());
  EXPECT_TRUE(make_tiling(TilingSpec::equilateral())->two_colorable());
  EXPECT_TRUE(make_tiling(TilingSpec::kaleidoscope())->two_colorable());
  EXPECT_TRUE(make_tiling(TilingSpec::trihexagonal())->two_colorable());
  EXPECT_TRUE(make_tiling(TilingSpec::triangle(0.5, 1.0))->two_colorable());
  EXPECT_FALSE(make_tiling(TilingSpec::regular_hexagon())->two_colorable());
}

TEST(CentralZone, TwoLinesDegenerate) {
  const std::vector<Line> lines{Line::through_point(Point2(1, 2), 0.0), Line::through_point(Point2(1, 2), 1.0)};
  const CentralZone z = central_zone(lines);
  ASSERT_EQ(z.vertices.size(), 1u);
  EXPECT_LT((z.vertices[0] - Point2(1, 2)).norm(), 1e-12);
}

TEST(CentralZone, ThreeLinesTriangle) {
  const std::vector<Line> lines{Line::through_point(Point2(0, 0), 0.0), Line::through_point(Point2(0, 0), 1.0),
                                Line::through_point(Point2(2, 0), 2.0)};
  EXPECT_EQ(central_zone(lines).vertices.size(), 3u);
}

// A convex polygon whose vertices are intersection points and which
// contains every intersection point is their convex hull.
TEST(CentralZone, IsTheHullOfAllIntersections) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(-3, 3), a(0, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Line> lines;
    for (int k = 0; k < 5; ++k) lines.push_back(Line::through_point(Point2(u(gen), u(gen)), a(gen)));
    std::vector<Point2> pts;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) pts.push_back(*intersect(lines[i], lines[j]));
    const auto zone = central_zone(lines).vertices;
    ASSERT_GE(zone.size(), 3u);
    for (const Point2& v : zone) {
      double best = 1e300;
      for (const Point2& p : pts) best = std::min(best, (v - p).norm());
      EXPECT_LT(best, 1e-12);
    }
    for (std::size_t k = 0; k < zone.size(); ++k) {
      const Point2& p0 = zone[k];
      const Vec2 e = (zone[(k + 1) % zone.size()] - p0).normalized();
      for (const Point2& p : pts) EXPECT_GT(cross2(e, p - p0), -1e-9) << trial;
      const Vec2 f = (zone[(k + 2) % zone.size()] - zone[(k + 1) % zone.size()]).normalized();
      EXPECT_GT(cross2(e, f), -1e-12);
    }
  }
}

TEST(CentralZone, ParallelLinesRejected) {
  EXPECT_THROW(make_tiling(TilingSpec::line_arrangement({{0.5, Point2(0, 0)}, {0.5, Point2(0, 1)}})), InvalidSpec);
}

TEST(Lattice, SquareGenerators) {
  const auto lat = make_tiling(TilingSpec::square())->translation_lattice();
  ASSERT_TRUE(lat.has_value());
  EXPECT_LT((lat->first - Vec2(1, 0)).norm(), 1e-15);
  EXPECT_LT((lat->second - Vec2(0, 1)).norm(), 1e-15);
}

TEST(Lattice, GeneratorsMapVerticesToVertices) {
  for (const auto& spec : periodic_specs()) {
    auto t = make_tiling(spec);
    const auto& pt = dynamic_cast<const PeriodicTiling&>(*t);
    std::vector<Point2> verts;
    for (const TileRef& r : pt.tiles_in_box(Point2(-4, -4), Point2(4, 4)))
      for (const Point2& v : pt.polygon(r)) verts.push_back(v);
    auto is_vertex = [&](const Point2& q) {
      return std::any_of(verts.begin(), verts.end(), [&](const Point2& v) { return (v - q).norm() < 1e-9; });
    };
    const auto [g1, g2] = *t->translation_lattice();
    for (std::size_t k = 0; k < verts.size(); k += 7) {
      if (verts[k].norm() > 2.0) continue;
      EXPECT_TRUE(is_vertex(verts[k] + g1)) << to_string(spec.variant);
      EXPECT_TRUE(is_vertex(verts[k] + g2)) << to_string(spec.variant);
    }
  }
  const auto tri = make_tiling(TilingSpec::trihexagonal())->translation_lattice();
  EXPECT_LT((tri->first - Vec2(2, 0)).norm(), 1e-15);
  EXPECT_LT((tri->second - Vec2(1, std::sqrt(3.0))).norm(), 1e-12);
}

TEST(Canonicalize, MidpointIsHalfInBothOrientations) {
  for (const auto& spec : periodic_specs()) {
    auto t = make_tiling(spec);
    const auto& pt = dynamic_cast<const PeriodicTiling&>(*t);
    for (std::size_t s = 0; s < pt.edge_slots(); ++s) {
      const EdgeRef e{2, -1, static_cast<int>(s)};
      const Piece p = t->edge_piece(e);
      const Point2 mid = p.at(0.5 * (p.lo + p.hi));
      EXPECT_NEAR(t->edge_param(e, mid), 0.5, 1e-12);
      const Vec2 normal(-p.direction.y(), p.direction.x());
      const auto a = t->canonicalize_state(e, 0.5, angle_of(normal));
      const auto b = t->canonicalize_state(e, 0.5, angle_of(Vec2(-normal)));
      EXPECT_NEAR(a.state.t, 0.5, 1e-12);
      EXPECT_NEAR(b.state.t, 0.5, 1e-12);
      EXPECT_NE(a.state.tile, b.state.tile);
    }
  }
}

TEST(Canonicalize, SquareCellReduces) {
  auto t = make_tiling(TilingSpec::square());
  const auto c = t->canonicalize_state(EdgeRef{3, 7, 0}, 0.3, 1.2);
  EXPECT_EQ(c.reduced.edge, (EdgeRef{0, 0, 0}));
  EXPECT_EQ(c.cell_i, 3);
  EXPECT_EQ(c.cell_j, 7);
  EXPECT_NEAR(c.reduced.t, 0.3, 1e-15);
  EXPECT_LT((c.state.point - c.reduced.point - Vec2(3, 7)).norm(), 1e-12);
}

TEST(Canonicalize, TrihexCellReducesKeepingSlotAndAngle) {
  auto t = make_tiling(TilingSpec::trihexagonal());
  const auto [g1, g2] = *t->translation_lattice();
  for (int slot = 0; slot < 6; ++slot) {
    const Piece p = t->edge_piece(EdgeRef{2, 1, slot});
    const double dir = angle_of(p.direction) + 1.0;
    const auto c = t->canonicalize_state(EdgeRef{2, 1, slot}, 0.37, dir);
    EXPECT_EQ(c.reduced.edge, (EdgeRef{0, 0, slot}));
    EXPECT_NEAR(c.reduced.t, 0.37, 1e-12);
    EXPECT_NEAR(c.reduced.dir, c.state.dir, 0.0);
    EXPECT_LT((c.reduced.point + 2 * g1 + g2 - c.state.point).norm(), 1e-12);
  }
}

TEST(Canonicalize, RejectsCornersAndGrazing) {
  auto t = make_tiling(TilingSpec::square());
  EXPECT_THROW(t->canonicalize_state(EdgeRef{0, 0, 0}, 1e-12, 1.0), CornerHit);
  EXPECT_THROW(t->canonicalize_state(EdgeRef{0, 0, 0}, 1.0 - 1e-12, 1.0), CornerHit);
  EXPECT_THROW(t->canonicalize_state(EdgeRef{0, 0, 0}, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(t->canonicalize_state(EdgeRef{0, 0, 0}, 0.5, 0.0), std::invalid_argument);
}

TEST(Canonicalize, StateFromPointFindsTheEdge) {
  auto t = make_tiling(TilingSpec::equilateral());
  const auto c = t->state_from_point(Point2(0.25, 0.0), 1.0);
  EXPECT_NEAR(c.state.t, 0.25, 1e-12);
  EXPECT_EQ(t->edge_slot_names().at(c.state.edge.slot), "base");
}

TEST(Specs, InvalidParametersRejected) {
  EXPECT_THROW(make_tiling(TilingSpec::triangle(2.0, 2.0)), InvalidSpec);
  EXPECT_THROW(make_tiling(TilingSpec::isosceles(0.0)), InvalidSpec);
  EXPECT_THROW(make_tiling(TilingSpec::right_triangle(kPi / 2)), InvalidSpec);
  EXPECT_THROW(make_tiling(TilingSpec::line_arrangement({{0.0, Point2::Zero()}})), InvalidSpec);
  // Three lines through one point are not simple.
  EXPECT_THROW(make_tiling(TilingSpec::line_arrangement(
                   {{0.0, Point2::Zero()}, {1.0, Point2::Zero()}, {2.0, Point2::Zero()}})),
               InvalidSpec);
  EXPECT_NO_THROW(make_tiling(TilingSpec::concurrent_lines({1.0, 1.0, kPi - 2.0})));
  EXPECT_THROW(make_tiling(TilingSpec::concurrent_lines({1.0, 1.0})), InvalidSpec);
}

TEST(Arrangement, AlphasSumToPi) {
  auto t = make_tiling(five_lines());
  const auto& arr = dynamic_cast<const LineArrangement&>(*t);
  double s = 0;
  for (double a : arr.alphas()) {
    EXPECT_GT(a, 0.0);
    s += a;
  }
  EXPECT_NEAR(s, kPi, 1e-12);
  EXPECT_NEAR(arr.relative_angles()[0], 0.0, 0.0);
  EXPECT_TRUE(std::is_sorted(arr.relative_angles().begin(), arr.relative_angles().end()));
}
