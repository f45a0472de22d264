#include "tilebill/tiling.hpp"

#include "tilebill/line_arrangement.hpp"
#include "tilebill/periodic_tiling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace tilebill {

namespace {

struct VariantName {
  TilingVariant variant;
  const char* name;
};

constexpr std::array<VariantName, 10> kVariantNames{{
    {TilingVariant::line_arrangement, "line_arrangement"},
    {TilingVariant::concurrent_lines, "concurrent_lines"},
    {TilingVariant::triangle, "triangle"},
    {TilingVariant::isosceles_triangle, "isosceles_triangle"},
    {TilingVariant::right_triangle, "right_triangle"},
    {TilingVariant::square, "square"},
    {TilingVariant::regular_hexagon, "regular_hexagon"},
    {TilingVariant::equilateral_triangle, "equilateral_triangle"},
    {TilingVariant::kaleidoscope_30_60_90, "kaleidoscope_30_60_90"},
    {TilingVariant::trihexagonal, "trihexagonal"},
}};

const double kSqrt3 = std::sqrt(3.0);

std::shared_ptr<const Tiling> build_triangle(const TilingSpec& spec, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(alpha + beta < kPi))
    throw InvalidSpec("triangle tiling needs alpha > 0, beta > 0 and alpha + beta < pi");
  const double side = std::sin(beta) / std::sin(alpha + beta);
  const Vec2 g1(1.0, 0.0);
  const Vec2 g2 = side * Vec2(std::cos(alpha), std::sin(alpha));
  std::vector<std::vector<Point2>> tiles{{Point2::Zero(), g1, g2}, {g1, g1 + g2, g2}};
  return std::make_shared<PeriodicTiling>(spec, g1, g2, std::move(tiles),
                                          std::vector<std::string>{"lower", "upper"},
                                          std::vector<std::string>{"base", "diagonal", "side"});
}

std::vector<Point2> pointy_hexagon() {
  std::vector<Point2> v;
  for (int k = 0; k < 6; ++k) v.push_back(direction_vector(kPi / 6.0 + k * kPi / 3.0));
  return v;
}

}  // namespace

const char* to_string(TilingVariant v) {
  for (const auto& vn : kVariantNames)
    if (vn.variant == v) return vn.name;
  return "?";
}

std::optional<TilingVariant> parse_variant(const std::string& name) {
  for (const auto& vn : kVariantNames)
    if (name == vn.name) return vn.variant;
  return std::nullopt;
}

TilingSpec TilingSpec::line_arrangement(std::vector<LineSpec> lines) {
  TilingSpec s;
  s.variant = TilingVariant::line_arrangement;
  s.lines = std::move(lines);
  return s;
}

TilingSpec TilingSpec::concurrent_lines(std::vector<double> angles) {
  TilingSpec s;
  s.variant = TilingVariant::concurrent_lines;
  s.angles = std::move(angles);
  return s;
}

TilingSpec TilingSpec::triangle(double alpha, double beta) {
  TilingSpec s;
  s.variant = TilingVariant::triangle;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

TilingSpec TilingSpec::isosceles(double vertex_angle) {
  TilingSpec s;
  s.variant = TilingVariant::isosceles_triangle;
  s.alpha = vertex_angle;
  return s;
}

TilingSpec TilingSpec::right_triangle(double alpha) {
  TilingSpec s;
  s.variant = TilingVariant::right_triangle;
  s.alpha = alpha;
  return s;
}

TilingSpec TilingSpec::square() { return TilingSpec{}; }

TilingSpec TilingSpec::regular_hexagon() {
  TilingSpec s;
  s.variant = TilingVariant::regular_hexagon;
  return s;
}

TilingSpec TilingSpec::equilateral() {
  TilingSpec s;
  s.variant = TilingVariant::equilateral_triangle;
  return s;
}

TilingSpec TilingSpec::kaleidoscope() {
  TilingSpec s;
  s.variant = TilingVariant::kaleidoscope_30_60_90;
  return s;
}

TilingSpec TilingSpec::trihexagonal() {
  TilingSpec s;
  s.variant = TilingVariant::trihexagonal;
  return s;
}

std::pair<double, double> TilingSpec::triangle_angles() const {
  switch (variant) {
    case TilingVariant::triangle: return {alpha, beta};
    case TilingVariant::isosceles_triangle: return {(kPi - alpha) / 2.0, (kPi - alpha) / 2.0};
    case TilingVariant::equilateral_triangle: return {kPi / 3.0, kPi / 3.0};
    case TilingVariant::right_triangle: return {kPi / 2.0 - alpha, kPi / 2.0};
    default: throw InvalidSpec(std::string("not a triangle tiling: ") + to_string(variant));
  }
}

std::shared_ptr<const Tiling> make_tiling(const TilingSpec& spec) {
  switch (spec.variant) {
    case TilingVariant::line_arrangement:
      return std::make_shared<LineArrangement>(spec, spec.lines, true);
    case TilingVariant::concurrent_lines: {
      if (spec.angles.empty()) throw InvalidSpec("concurrent_lines needs at least one angle");
      double sum = 0.0;
      std::vector<LineSpec> lines;
      for (double a : spec.angles) {
        if (!(a > 0.0)) throw InvalidSpec("concurrent_lines angles must be positive");
        lines.push_back({sum, Point2::Zero()});
        sum += a;
      }
      if (std::abs(sum - kPi) > 1e-9) throw InvalidSpec("concurrent_lines angles must sum to pi");
      return std::make_shared<LineArrangement>(spec, lines, false);
    }
    case TilingVariant::triangle: return build_triangle(spec, spec.alpha, spec.beta);
    case TilingVariant::isosceles_triangle: {
      if (!(spec.alpha > 0.0 && spec.alpha < kPi))
        throw InvalidSpec("isosceles vertex angle must lie in (0, pi)");
      const double base = (kPi - spec.alpha) / 2.0;
      return build_triangle(spec, base, base);
    }
    case TilingVariant::equilateral_triangle: return build_triangle(spec, kPi / 3.0, kPi / 3.0);
    case TilingVariant::right_triangle: {
      if (!(spec.alpha > 0.0 && spec.alpha < kPi / 2.0))
        throw InvalidSpec("right triangle angle must lie in (0, pi/2)");
      // Axis-parallel legs, hypotenuse of length 1 along the negative diagonal;
      // alpha sits at the top vertex, opposite the horizontal leg.
      const double w = std::sin(spec.alpha);
      const double h = std::cos(spec.alpha);
      const Vec2 g1(w, 0.0), g2(0.0, h);
      std::vector<std::vector<Point2>> tiles{{Point2::Zero(), g1, g2}, {g1, g1 + g2, g2}};
      return std::make_shared<PeriodicTiling>(
          spec, g1, g2, std::move(tiles), std::vector<std::string>{"lower", "upper"},
          std::vector<std::string>{"horizontal", "hypotenuse", "vertical"});
    }
    case TilingVariant::square: {
      std::vector<std::vector<Point2>> tiles{
          {Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)}};
      return std::make_shared<PeriodicTiling>(spec, Vec2(1, 0), Vec2(0, 1), std::move(tiles),
                                              std::vector<std::string>{"square"},
                                              std::vector<std::string>{"bottom", "left"});
    }
    case TilingVariant::regular_hexagon: {
      std::vector<std::vector<Point2>> tiles{pointy_hexagon()};
      return std::make_shared<PeriodicTiling>(
          spec, Vec2(kSqrt3, 0), Vec2(kSqrt3 / 2, 1.5), std::move(tiles),
          std::vector<std::string>{"hexagon"},
          std::vector<std::string>{"upper_right", "upper_left", "left"});
    }
    case TilingVariant::kaleidoscope_30_60_90: {
      // Every hexagon of the unit hexagonal tiling split into 12 triangles by
      // its center, vertices and edge midpoints; all lines are mirrors.
      const auto hex = pointy_hexagon();
      std::vector<std::vector<Point2>> tiles;
      std::vector<std::string> names;
      for (int k = 0; k < 6; ++k) {
        const Point2 a = hex[k], b = hex[(k + 1) % 6];
        const Point2 m = 0.5 * (a + b);
        tiles.push_back({Point2::Zero(), a, m});
        tiles.push_back({Point2::Zero(), m, b});
        names.push_back("t" + std::to_string(2 * k));
        names.push_back("t" + std::to_string(2 * k + 1));
      }
      return std::make_shared<PeriodicTiling>(spec, Vec2(kSqrt3, 0), Vec2(kSqrt3 / 2, 1.5),
                                              std::move(tiles), std::move(names),
                                              std::vector<std::string>{});
    }
    case TilingVariant::trihexagonal: {
      std::vector<Point2> hex;
      for (int k = 0; k < 6; ++k) hex.push_back(direction_vector(k * kPi / 3.0));
      std::vector<std::vector<Point2>> tiles{
          hex,
          {Point2(0.5, kSqrt3 / 2), Point2(0, kSqrt3), Point2(-0.5, kSqrt3 / 2)},
          {Point2(-0.5, -kSqrt3 / 2), Point2(0, -kSqrt3), Point2(0.5, -kSqrt3 / 2)}};
      return std::make_shared<PeriodicTiling>(
          spec, Vec2(2, 0), Vec2(1, kSqrt3), std::move(tiles),
          std::vector<std::string>{"hexagon", "up_triangle", "down_triangle"},
          std::vector<std::string>{"hex0", "hex1", "hex2", "hex3", "hex4", "hex5"});
    }
  }
  throw InvalidSpec("unknown tiling variant");
}

// ---------------------------------------------------------------------------
// Tiling base

namespace {

double piece_param_to_t(const Piece& pc, double s) {
  const bool lo_fin = std::isfinite(pc.lo), hi_fin = std::isfinite(pc.hi);
  if (lo_fin && hi_fin) return (s - pc.lo) / (pc.hi - pc.lo);
  if (lo_fin) return (s - pc.lo) / (1.0 + (s - pc.lo));
  if (hi_fin) return 1.0 / (1.0 + (pc.hi - s));
  return 0.5 + std::atan(s) / kPi;
}

double piece_t_to_param(const Piece& pc, double t) {
  const bool lo_fin = std::isfinite(pc.lo), hi_fin = std::isfinite(pc.hi);
  if (lo_fin && hi_fin) return pc.lo + t * (pc.hi - pc.lo);
  if (lo_fin) return pc.lo + t / (1.0 - t);
  if (hi_fin) return pc.hi - (1.0 / t - 1.0);
  return std::tan((t - 0.5) * kPi);
}

}  // namespace

double Tiling::edge_param(const EdgeRef& edge, const Point2& p) const {
  const Piece pc = edge_piece(edge);
  return piece_param_to_t(pc, (p - pc.origin).dot(pc.direction));
}

Point2 Tiling::edge_point(const EdgeRef& edge, double t) const {
  const Piece pc = edge_piece(edge);
  return pc.at(piece_t_to_param(pc, t));
}

CanonicalState Tiling::canonicalize_state(const EdgeRef& edge, double t, double dir) const {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("edge fraction must lie in (0, 1)");
  const Piece pc = edge_piece(edge);
  const double s = piece_t_to_param(pc, t);
  if ((std::isfinite(pc.lo) && s - pc.lo < kCornerEps) ||
      (std::isfinite(pc.hi) && pc.hi - s < kCornerEps))
    throw CornerHit("start position is on a vertex");
  dir = normalize_direction(dir);
  const Vec2 d = direction_vector(dir);
  const double c = cross2(pc.direction, d);
  if (std::abs(c) < 1e-12) throw std::invalid_argument("direction is parallel to the edge");
  const auto [ta, tb] = edge_tiles(edge);
  TileRef entered = tb;
  for (const auto& side : tile_boundary(ta)) {
    if (side.edge != edge) continue;
    // ta lies to the left of its CCW side direction.
    entered = cross2(side.piece.direction, d) > 0.0 ? ta : tb;
    break;
  }
  TrajectoryState st;
  st.edge = edge;
  st.t = t;
  st.dir = dir;
  st.tile = entered;
  st.point = pc.at(s);
  return canonical(st);
}

CanonicalState Tiling::state_from_point(const Point2& p, double dir) const {
  const auto near = edges_near(p, kCornerEps);
  if (near.empty()) throw std::invalid_argument("point does not lie on an edge");
  if (near.size() > 1) throw CornerHit("point lies on a vertex");
  const EdgeRef e = near.front();
  CanonicalState cs = canonicalize_state(e, edge_param(e, p), dir);
  return cs;
}

CanonicalState Tiling::canonical(const TrajectoryState& s) const {
  CanonicalState cs;
  cs.state = s;
  cs.reduced = s;
  cs.reduced.edge = reduce(s.edge);
  cs.reduced.tile = reduce_tile(s.tile, s.edge);
  cs.reduced.point = translation_lattice() ? edge_point(cs.reduced.edge, s.t) : s.point;
  cs.cell_i = s.edge.i - cs.reduced.edge.i;
  cs.cell_j = s.edge.j - cs.reduced.edge.j;
  return cs;
}

ExitHit Tiling::find_exit(const TileRef& tile, const EdgeRef& from, const Point2& p,
                          const Vec2& d) const {
  ExitHit hit;
  double best = std::numeric_limits<double>::infinity();
  const BoundarySide* best_side = nullptr;
  double best_w = 0.0;
  bool any_unbounded = false;
  const auto sides = tile_boundary(tile);
  for (const auto& side : sides) {
    if (!side.piece.bounded()) any_unbounded = true;
    if (side.edge == from) continue;
    const Piece& pc = side.piece;
    const double denom = cross2(d, pc.direction);
    if (std::abs(denom) < 1e-15) continue;
    const Vec2 op = pc.origin - p;
    const double s = cross2(op, pc.direction) / denom;
    const double w = cross2(op, d) / denom;
    if (s <= kRayEps || w < pc.lo - kCornerEps || w > pc.hi + kCornerEps) continue;
    if (s < best) {
      best = s;
      best_side = &side;
      best_w = w;
    }
  }
  if (best_side == nullptr) {
    hit.status = any_unbounded ? ExitHit::Status::escaped : ExitHit::Status::corner;
    return hit;
  }
  const Piece& pc = best_side->piece;
  if ((std::isfinite(pc.lo) && best_w - pc.lo < kCornerEps) ||
      (std::isfinite(pc.hi) && pc.hi - best_w < kCornerEps)) {
    hit.status = ExitHit::Status::corner;
    hit.point = pc.at(best_w);
    return hit;
  }
  hit.edge = best_side->edge;
  hit.next_tile = best_side->neighbor;
  hit.point = pc.at(best_w);
  hit.line = pc.line();
  return hit;
}

// ---------------------------------------------------------------------------
// Central zone

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) { return (a - b).norm() < 1e-12; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Point2& o, const Point2& a, const Point2& b) {
    return cross2(a - o, b - o);
  };
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 1e-14) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

CentralZone central_zone(std::span<const Line> lines) {
  if (lines.size() < 2) throw InvalidSpec("central zone needs at least two lines");
  std::vector<Point2> pts;
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const auto x = intersect(lines[a], lines[b]);
      if (!x) throw InvalidSpec("central zone undefined for parallel lines");
      pts.push_back(*x);
    }
  return CentralZone{convex_hull(std::move(pts))};
}

bool CentralZone::contains(const Point2& p, double eps) const {
  if (vertices.size() < 3) return false;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const Point2& a = vertices[k];
    const Point2& b = vertices[(k + 1) % vertices.size()];
    const Vec2 e = b - a;
    if (cross2(e, Vec2(p - a)) / e.norm() < -eps) return false;
  }
  return true;
}

bool CentralZone::segment_enters(const Point2& a, const Point2& b) const {
  if (vertices.size() < 3) return false;
  // Clip the segment against every half-plane; it enters when a part of
  // positive length survives strictly inside.
  double lo = 0.0, hi = 1.0;
  const Vec2 d = b - a;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const Point2& p = vertices[k];
    const Point2& q = vertices[(k + 1) % vertices.size()];
    const Vec2 e = (q - p).normalized();
    const double f0 = cross2(e, Vec2(a - p));
    const double f1 = cross2(e, d);
    if (std::abs(f1) < 1e-15) {
      if (f0 <= 1e-12) return false;
      continue;
    }
    const double s = -f0 / f1;
    if (f1 > 0) lo = std::max(lo, s);
    else hi = std::min(hi, s);
    if (lo >= hi) return false;
  }
  return (hi - lo) * d.norm() > 1e-12;
}

}  // namespace tilebill
