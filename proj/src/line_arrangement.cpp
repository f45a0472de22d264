#include "tilebill/line_arrangement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace tilebill {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LineArrangement::LineArrangement(TilingSpec spec, const std::vector<LineSpec>& lines,
                                 bool require_simple)
    : Tiling(std::move(spec)) {
  if (lines.size() < 2) throw InvalidSpec("an arrangement needs at least two lines");
  if (lines.size() > 62) throw InvalidSpec("at most 62 lines are supported");
  for (const auto& l : lines)
    if (!std::isfinite(l.angle) || !l.point.allFinite())
      throw InvalidSpec("line parameters must be finite");

  const double a0 = lines.front().angle;
  std::vector<std::size_t> order(lines.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  auto rel = [&](std::size_t k) { return normalize_line_angle(lines[k].angle - a0); };
  std::stable_sort(order.begin() + 1, order.end(),
                   [&](std::size_t a, std::size_t b) { return rel(a) < rel(b); });
  for (std::size_t k : order) {
    lines_.push_back(Line::through_point(lines[k].point, normalize_line_angle(lines[k].angle)));
    relative_.push_back(k == 0 ? 0.0 : rel(k));
  }
  const std::size_t n = lines_.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double gap = relative_[k + 1] - relative_[k];
    if (gap < 1e-9) throw InvalidSpec("arrangement contains parallel lines");
    alphas_.push_back(gap);
  }
  alphas_.push_back(kPi - relative_.back());
  if (alphas_.back() < 1e-9) throw InvalidSpec("arrangement contains parallel lines");

  if (require_simple) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const Point2 x = *intersect(lines_[a], lines_[b]);
        for (std::size_t c = b + 1; c < n; ++c)
          if (std::abs(lines_[c].signed_distance(x)) < 1e-9)
            throw InvalidSpec("three lines of the arrangement meet in a point");
      }
  }

  params_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& ps = params_[k];
    for (std::size_t m = 0; m < n; ++m)
      if (m != k) ps.push_back(param_on(k, *intersect(lines_[k], lines_[m])));
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-9; }),
             ps.end());
  }
  zone_ = central_zone(lines_);
}

double LineArrangement::param_on(std::size_t k, const Point2& p) const {
  return (p - lines_[k].anchor()).dot(lines_[k].direction());
}

std::int64_t LineArrangement::interval_of(std::size_t k, double s) const {
  const auto& ps = params_[k];
  return std::lower_bound(ps.begin(), ps.end(), s) - ps.begin();
}

Point2 LineArrangement::zone_center() const {
  Point2 c = Point2::Zero();
  for (const auto& v : zone_.vertices) c += v;
  return c / static_cast<double>(zone_.vertices.size());
}

double LineArrangement::zone_radius() const {
  const Point2 c = zone_center();
  double r = 0.0;
  for (const auto& v : zone_.vertices) r = std::max(r, (v - c).norm());
  return r;
}

std::uint64_t LineArrangement::side_mask(const Point2& p) const {
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < lines_.size(); ++k)
    if (lines_[k].signed_distance(p) > 0.0) mask |= std::uint64_t{1} << k;
  return mask;
}

TileRef LineArrangement::locate(const Point2& p) const {
  for (const auto& l : lines_)
    if (std::abs(l.signed_distance(p)) < kCornerEps) throw OnBoundary("point lies on a line");
  return {static_cast<std::int64_t>(side_mask(p)), 0, 0};
}

Piece LineArrangement::edge_piece(const EdgeRef& edge) const {
  if (edge.i < 0 || edge.i >= static_cast<std::int64_t>(lines_.size()))
    throw std::out_of_range("edge line index out of range");
  const auto& ps = params_[edge.i];
  if (edge.j < 0 || edge.j > static_cast<std::int64_t>(ps.size()))
    throw std::out_of_range("edge interval index out of range");
  Piece pc;
  pc.origin = lines_[edge.i].anchor();
  pc.direction = lines_[edge.i].direction();
  pc.lo = edge.j == 0 ? -kInf : ps[edge.j - 1];
  pc.hi = edge.j == static_cast<std::int64_t>(ps.size()) ? kInf : ps[edge.j];
  return pc;
}

std::pair<TileRef, TileRef> LineArrangement::edge_tiles(const EdgeRef& edge) const {
  const Piece pc = edge_piece(edge);
  double s = 0.0;
  if (pc.bounded()) s = 0.5 * (pc.lo + pc.hi);
  else if (std::isfinite(pc.lo)) s = pc.lo + 1.0;
  else if (std::isfinite(pc.hi)) s = pc.hi - 1.0;
  const Point2 q = pc.at(s);
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < lines_.size(); ++k)
    if (static_cast<std::int64_t>(k) != edge.i && lines_[k].signed_distance(q) > 0.0)
      mask |= std::uint64_t{1} << k;
  const std::uint64_t bit = std::uint64_t{1} << edge.i;
  return {TileRef{static_cast<std::int64_t>(mask | bit), 0, 0},
          TileRef{static_cast<std::int64_t>(mask & ~bit), 0, 0}};
}

std::vector<BoundarySide> LineArrangement::tile_boundary(const TileRef& tile) const {
  const auto mask = static_cast<std::uint64_t>(tile.i);
  const std::size_t n = lines_.size();
  auto positive = [&](std::size_t k) { return (mask >> k) & 1U; };
  std::vector<BoundarySide> sides;
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 o = lines_[k].anchor();
    const Vec2 d = lines_[k].direction();
    double lo = -kInf, hi = kInf;
    bool empty = false;
    for (std::size_t m = 0; m < n && !empty; ++m) {
      if (m == k) continue;
      const double f0 = lines_[m].signed_distance(o);
      const double f1 = lines_[m].normal.dot(d);
      const double sgn = positive(m) ? 1.0 : -1.0;
      // Need sgn * (f0 + s f1) > 0.
      const double a = sgn * f0, b = sgn * f1;
      if (std::abs(b) < 1e-15) {
        if (a <= 0.0) empty = true;
        continue;
      }
      const double s = -a / b;
      if (b > 0) lo = std::max(lo, s);
      else hi = std::min(hi, s);
      if (hi - lo < 1e-12) empty = true;
    }
    if (empty) continue;
    double mid = 0.0;
    if (std::isfinite(lo) && std::isfinite(hi)) mid = 0.5 * (lo + hi);
    else if (std::isfinite(lo)) mid = lo + 1.0;
    else if (std::isfinite(hi)) mid = hi - 1.0;
    BoundarySide side;
    side.edge = {static_cast<std::int64_t>(k), interval_of(k, mid), 0};
    side.neighbor = {static_cast<std::int64_t>(mask ^ (std::uint64_t{1} << k)), 0, 0};
    if (positive(k)) {
      side.piece = Piece{o, d, lo, hi};
    } else {
      side.piece = Piece{o, -d, -hi, -lo};
    }
    sides.push_back(side);
  }
  if (sides.empty()) return sides;
  std::size_t first = 0;
  for (std::size_t k = 0; k < sides.size(); ++k)
    if (!std::isfinite(sides[k].piece.lo)) first = k;
  const double base = angle_of(sides[first].piece.direction);
  std::sort(sides.begin(), sides.end(), [&](const BoundarySide& a, const BoundarySide& b) {
    return normalize_direction(angle_of(a.piece.direction) - base + 1e-12) <
           normalize_direction(angle_of(b.piece.direction) - base + 1e-12);
  });
  return sides;
}

int LineArrangement::tile_color(const TileRef& tile) const {
  return std::popcount(static_cast<std::uint64_t>(tile.i)) & 1;
}

ExitHit LineArrangement::find_exit(const TileRef& tile, const EdgeRef& from, const Point2& p,
                                   const Vec2& d) const {
  ExitHit hit;
  double best = kInf;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < lines_.size(); ++k) {
    if (static_cast<std::int64_t>(k) == from.i) continue;
    const double denom = lines_[k].normal.dot(d);
    if (std::abs(denom) < 1e-15) continue;
    const double s = -lines_[k].signed_distance(p) / denom;
    if (s > kRayEps && s < best) {
      best = s;
      best_k = k;
    }
  }
  if (!std::isfinite(best)) {
    hit.status = ExitHit::Status::escaped;
    return hit;
  }
  const Point2 q = p + best * d;
  const double sq = param_on(best_k, q);
  const auto& ps = params_[best_k];
  auto it = std::lower_bound(ps.begin(), ps.end(), sq);
  if ((it != ps.end() && *it - sq < kCornerEps) || (it != ps.begin() && sq - *(it - 1) < kCornerEps)) {
    hit.status = ExitHit::Status::corner;
    hit.point = q;
    return hit;
  }
  hit.edge = {static_cast<std::int64_t>(best_k), it - ps.begin(), 0};
  hit.next_tile = {static_cast<std::int64_t>(static_cast<std::uint64_t>(tile.i) ^
                                             (std::uint64_t{1} << best_k)),
                   0, 0};
  hit.point = lines_[best_k].project(q);
  hit.line = lines_[best_k];
  return hit;
}

std::vector<EdgeRef> LineArrangement::edges_near(const Point2& p, double radius) const {
  std::vector<EdgeRef> out;
  for (std::size_t k = 0; k < lines_.size(); ++k)
    if (std::abs(lines_[k].signed_distance(p)) < radius)
      out.push_back({static_cast<std::int64_t>(k), interval_of(k, param_on(k, p)), 0});
  return out;
}

}  // namespace tilebill
