#pragma once

#include "tilebill/tiling.hpp"

#include <string>
#include <vector>

namespace tilebill {

/// Periodic tiling generated by translating a unit cell of convex polygons by
/// the lattice i*g1 + j*g2.
///
/// Edge slots are discovered from the polygons: each polygon side is
/// identified by its midpoint reduced into the fundamental parallelogram, so
/// the two tiles sharing an edge agree on its (cell, slot) without any
/// hand-written adjacency tables.
class PeriodicTiling final : public Tiling {
 public:
  PeriodicTiling(TilingSpec spec, Vec2 g1, Vec2 g2, std::vector<std::vector<Point2>> tiles,
                 std::vector<std::string> tile_names, std::vector<std::string> slot_names);

  TileRef locate(const Point2& p) const override;
  std::vector<BoundarySide> tile_boundary(const TileRef& tile) const override;
  Piece edge_piece(const EdgeRef& edge) const override;
  std::pair<TileRef, TileRef> edge_tiles(const EdgeRef& edge) const override;
  std::optional<std::pair<Vec2, Vec2>> translation_lattice() const override {
    return std::make_pair(g1_, g2_);
  }
  EdgeRef reduce(const EdgeRef& e) const override { return {0, 0, e.slot}; }
  TileRef reduce_tile(const TileRef& t, const EdgeRef& e) const override {
    return {t.i - e.i, t.j - e.j, t.slot};
  }
  Vec2 cell_offset(const EdgeRef& e) const override { return cell_origin(e.i, e.j); }
  int tile_color(const TileRef& tile) const override;
  bool two_colorable() const override { return two_colorable_; }
  ExitHit find_exit(const TileRef& tile, const EdgeRef& from, const Point2& p,
                    const Vec2& d) const override;
  std::vector<std::string> edge_slot_names() const override { return slot_names_; }
  std::vector<std::string> tile_slot_names() const override { return tile_names_; }
  double typical_edge_length() const override { return typical_length_; }

  Point2 cell_origin(std::int64_t i, std::int64_t j) const {
    return static_cast<double>(i) * g1_ + static_cast<double>(j) * g2_;
  }
  /// Real lattice coordinates of p.
  Vec2 lattice_coords(const Point2& p) const { return basis_inv_ * p; }
  std::size_t tile_slots() const { return tiles_.size(); }
  std::size_t edge_slots() const { return slots_.size(); }
  /// Tile polygon (CCW) in the coordinates of its own cell.
  const std::vector<Point2>& tile_polygon(int slot) const { return tiles_.at(slot); }
  std::vector<Point2> polygon(const TileRef& t) const;
  /// Every tile whose cell is within the lattice-coordinate box spanned by
  /// the two corners (padded by two cells).
  std::vector<TileRef> tiles_in_box(const Point2& lo, const Point2& hi) const;

 protected:
  std::vector<EdgeRef> edges_near(const Point2& p, double radius) const override;

 private:
  struct SideInfo {
    int slot = 0;
    std::int64_t di = 0, dj = 0;  // cell of the edge relative to the tile's cell
    TileRef neighbor;             // relative to the tile's cell
  };
  struct SlotInfo {
    Point2 a, b;  // canonical orientation, cell (0, 0)
    std::vector<TileRef> tiles;  // adjacent tiles relative to the edge cell
  };

  Vec2 g1_, g2_;
  Eigen::Matrix2d basis_, basis_inv_;
  std::vector<std::vector<Point2>> tiles_;
  std::vector<std::string> tile_names_;
  std::vector<std::string> slot_names_;
  std::vector<std::vector<SideInfo>> sides_;
  std::vector<SlotInfo> slots_;
  std::vector<int> base_color_;
  int color_i_ = 0, color_j_ = 0;
  bool two_colorable_ = false;
  double typical_length_ = 1.0;

  void solve_coloring();
};

}  // namespace tilebill
