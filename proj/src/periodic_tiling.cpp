#include "tilebill/periodic_tiling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tilebill {

namespace {

double signed_area(const std::vector<Point2>& poly) {
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) a += cross2(poly[k], poly[(k + 1) % poly.size()]);
  return 0.5 * a;
}

bool lex_less(const Point2& a, const Point2& b) {
  if (std::abs(a.x() - b.x()) > 1e-9) return a.x() < b.x();
  return a.y() < b.y();
}

double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Vec2 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

PeriodicTiling::PeriodicTiling(TilingSpec spec, Vec2 g1, Vec2 g2,
                               std::vector<std::vector<Point2>> tiles,
                               std::vector<std::string> tile_names,
                               std::vector<std::string> slot_names)
    : Tiling(std::move(spec)),
      g1_(g1),
      g2_(g2),
      tiles_(std::move(tiles)),
      tile_names_(std::move(tile_names)) {
  basis_.col(0) = g1_;
  basis_.col(1) = g2_;
  if (std::abs(basis_.determinant()) < 1e-12) throw InvalidSpec("degenerate lattice");
  basis_inv_ = basis_.inverse();
  for (auto& poly : tiles_) {
    if (poly.size() < 3) throw InvalidSpec("tile polygon needs at least three vertices");
    if (signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());
  }

  double total_len = 0.0;
  std::size_t count = 0;
  sides_.resize(tiles_.size());
  for (std::size_t s = 0; s < tiles_.size(); ++s) {
    const auto& poly = tiles_[s];
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Point2 a = poly[k], b = poly[(k + 1) % poly.size()];
      total_len += (b - a).norm();
      ++count;
      const Point2 mid = 0.5 * (a + b);
      const Vec2 lam = basis_inv_ * mid;
      const auto ci = static_cast<std::int64_t>(std::floor(lam.x() + 1e-7));
      const auto cj = static_cast<std::int64_t>(std::floor(lam.y() + 1e-7));
      const Point2 off = cell_origin(ci, cj);
      const Point2 reduced = mid - off;
      int slot = -1;
      for (std::size_t q = 0; q < slots_.size(); ++q)
        if ((0.5 * (slots_[q].a + slots_[q].b) - reduced).norm() < 1e-6) slot = static_cast<int>(q);
      if (slot < 0) {
        SlotInfo info;
        info.a = a - off;
        info.b = b - off;
        if (lex_less(info.b, info.a)) std::swap(info.a, info.b);
        slots_.push_back(info);
        slot = static_cast<int>(slots_.size() - 1);
      }
      slots_[slot].tiles.push_back({-ci, -cj, static_cast<int>(s)});
      sides_[s].push_back({slot, ci, cj, TileRef{}});
    }
  }
  typical_length_ = total_len / static_cast<double>(count);

  for (std::size_t q = 0; q < slots_.size(); ++q) {
    auto& info = slots_[q];
    if (info.tiles.size() != 2) throw std::logic_error("tile polygons do not form an edge-to-edge tiling");
    // Put the tile lying to the left of the canonical direction first.
    const TileRef& t0 = info.tiles[0];
    const auto& poly = tiles_[t0.slot];
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (sides_[t0.slot][k].slot != static_cast<int>(q)) continue;
      const Vec2 dir = poly[(k + 1) % poly.size()] - poly[k];
      if (dir.dot(info.b - info.a) < 0) std::swap(info.tiles[0], info.tiles[1]);
      break;
    }
  }
  for (std::size_t s = 0; s < tiles_.size(); ++s)
    for (auto& side : sides_[s]) {
      const auto& info = slots_[side.slot];
      const TileRef self{-side.di, -side.dj, static_cast<int>(s)};
      const TileRef other = info.tiles[0] == self ? info.tiles[1] : info.tiles[0];
      side.neighbor = {other.i + side.di, other.j + side.dj, other.slot};
    }

  if (slot_names.empty()) {
    for (std::size_t q = 0; q < slots_.size(); ++q) slot_names.push_back("e" + std::to_string(q));
  }
  if (slot_names.size() != slots_.size()) throw std::logic_error("edge slot name count mismatch");
  slot_names_ = std::move(slot_names);
  if (tile_names_.size() != tiles_.size()) throw std::logic_error("tile slot name count mismatch");
  solve_coloring();
}

void PeriodicTiling::solve_coloring() {
  two_colorable_ = false;
  for (int ci = 0; ci < 2 && !two_colorable_; ++ci)
    for (int cj = 0; cj < 2 && !two_colorable_; ++cj) {
      std::vector<int> base(tiles_.size(), -1);
      bool ok = true;
      base[0] = 0;
      bool changed = true;
      while (changed && ok) {
        changed = false;
        for (std::size_t s = 0; s < tiles_.size() && ok; ++s) {
          if (base[s] < 0) continue;
          for (const auto& side : sides_[s]) {
            const auto& nb = side.neighbor;
            const int want = base[s] ^ 1 ^ static_cast<int>((ci * nb.i + cj * nb.j) & 1);
            if (base[nb.slot] < 0) {
              base[nb.slot] = want;
              changed = true;
            } else if (base[nb.slot] != want) {
              ok = false;
              break;
            }
          }
        }
      }
      if (ok && std::find(base.begin(), base.end(), -1) == base.end()) {
        two_colorable_ = true;
        base_color_ = base;
        color_i_ = ci;
        color_j_ = cj;
      }
    }
}

int PeriodicTiling::tile_color(const TileRef& tile) const {
  if (!two_colorable_) return -1;
  return base_color_.at(tile.slot) ^ static_cast<int>((color_i_ * tile.i + color_j_ * tile.j) & 1);
}

std::vector<Point2> PeriodicTiling::polygon(const TileRef& t) const {
  std::vector<Point2> out = tiles_.at(t.slot);
  const Point2 off = cell_origin(t.i, t.j);
  for (auto& p : out) p += off;
  return out;
}

TileRef PeriodicTiling::locate(const Point2& p) const {
  const Vec2 lam = lattice_coords(p);
  const auto bi = static_cast<std::int64_t>(std::floor(lam.x()));
  const auto bj = static_cast<std::int64_t>(std::floor(lam.y()));
  bool boundary = false;
  for (std::int64_t di = -2; di <= 2; ++di)
    for (std::int64_t dj = -2; dj <= 2; ++dj)
      for (std::size_t s = 0; s < tiles_.size(); ++s) {
        const TileRef t{bi + di, bj + dj, static_cast<int>(s)};
        const auto poly = polygon(t);
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < poly.size(); ++k) {
          const Vec2 e = poly[(k + 1) % poly.size()] - poly[k];
          worst = std::min(worst, cross2(e, Vec2(p - poly[k])) / e.norm());
        }
        if (worst > kCornerEps) return t;
        if (worst > -kCornerEps) boundary = true;
      }
  if (boundary) throw OnBoundary("point lies on a tile edge");
  throw TilingError("point not covered by the tiling");
}

std::vector<BoundarySide> PeriodicTiling::tile_boundary(const TileRef& tile) const {
  const auto poly = polygon(tile);
  const auto& info = sides_.at(tile.slot);
  std::vector<BoundarySide> out;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point2 a = poly[k], b = poly[(k + 1) % poly.size()];
    const double len = (b - a).norm();
    BoundarySide side;
    side.edge = {tile.i + info[k].di, tile.j + info[k].dj, info[k].slot};
    side.piece = Piece{a, (b - a) / len, 0.0, len};
    side.neighbor = {tile.i + info[k].neighbor.i, tile.j + info[k].neighbor.j, info[k].neighbor.slot};
    out.push_back(side);
  }
  return out;
}

Piece PeriodicTiling::edge_piece(const EdgeRef& edge) const {
  const auto& info = slots_.at(edge.slot);
  const Point2 off = cell_origin(edge.i, edge.j);
  const Vec2 d = info.b - info.a;
  const double len = d.norm();
  return Piece{info.a + off, d / len, 0.0, len};
}

std::pair<TileRef, TileRef> PeriodicTiling::edge_tiles(const EdgeRef& edge) const {
  const auto& info = slots_.at(edge.slot);
  auto shift = [&](const TileRef& t) { return TileRef{t.i + edge.i, t.j + edge.j, t.slot}; };
  return {shift(info.tiles[0]), shift(info.tiles[1])};
}

ExitHit PeriodicTiling::find_exit(const TileRef& tile, const EdgeRef& from, const Point2& p,
                                  const Vec2& d) const {
  return Tiling::find_exit(tile, from, p, d);
}

std::vector<TileRef> PeriodicTiling::tiles_in_box(const Point2& lo, const Point2& hi) const {
  double imin = std::numeric_limits<double>::infinity(), imax = -imin;
  double jmin = imin, jmax = -imin;
  for (const Point2& c : {lo, hi, Point2(lo.x(), hi.y()), Point2(hi.x(), lo.y())}) {
    const Vec2 lam = lattice_coords(c);
    imin = std::min(imin, lam.x());
    imax = std::max(imax, lam.x());
    jmin = std::min(jmin, lam.y());
    jmax = std::max(jmax, lam.y());
  }
  std::vector<TileRef> out;
  for (auto i = static_cast<std::int64_t>(std::floor(imin)) - 2;
       i <= static_cast<std::int64_t>(std::floor(imax)) + 2; ++i)
    for (auto j = static_cast<std::int64_t>(std::floor(jmin)) - 2;
         j <= static_cast<std::int64_t>(std::floor(jmax)) + 2; ++j)
      for (std::size_t s = 0; s < tiles_.size(); ++s) out.push_back({i, j, static_cast<int>(s)});
  return out;
}

std::vector<EdgeRef> PeriodicTiling::edges_near(const Point2& p, double radius) const {
  const Vec2 lam = lattice_coords(p);
  const auto bi = static_cast<std::int64_t>(std::floor(lam.x()));
  const auto bj = static_cast<std::int64_t>(std::floor(lam.y()));
  std::set<EdgeRef> found;
  for (std::int64_t di = -2; di <= 2; ++di)
    for (std::int64_t dj = -2; dj <= 2; ++dj)
      for (std::size_t q = 0; q < slots_.size(); ++q) {
        const Point2 off = cell_origin(bi + di, bj + dj);
        if (segment_distance(p, slots_[q].a + off, slots_[q].b + off) < radius)
          found.insert({bi + di, bj + dj, static_cast<int>(q)});
      }
  return {found.begin(), found.end()};
}

}  // namespace tilebill
