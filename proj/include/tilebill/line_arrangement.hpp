#pragma once

#include "tilebill/tiling.hpp"

#include <cstdint>
#include <vector>

namespace tilebill {

/// Tiling of the plane by finitely many pairwise non-parallel lines.
///
/// Lines are re-indexed by angle: l_0 is the first input line and the rest are
/// sorted by the CCW angle they make with l_0. alphas()[i] is the CCW angle
/// from l_i to l_{i+1} (indices mod n), so the alphas sum to pi.
///
/// Faces are identified by a side mask, which limits arrangements to 62 lines.
class LineArrangement final : public Tiling {
 public:
  LineArrangement(TilingSpec spec, const std::vector<LineSpec>& lines, bool require_simple);

  TileRef locate(const Point2& p) const override;
  std::vector<BoundarySide> tile_boundary(const TileRef& tile) const override;
  Piece edge_piece(const EdgeRef& edge) const override;
  std::pair<TileRef, TileRef> edge_tiles(const EdgeRef& edge) const override;
  std::optional<std::pair<Vec2, Vec2>> translation_lattice() const override { return std::nullopt; }
  int tile_color(const TileRef& tile) const override;
  bool two_colorable() const override { return true; }
  ExitHit find_exit(const TileRef& tile, const EdgeRef& from, const Point2& p,
                    const Vec2& d) const override;

  std::size_t size() const { return lines_.size(); }
  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<double>& alphas() const { return alphas_; }
  /// Angle of l_i measured CCW from l_0, in [0, pi).
  const std::vector<double>& relative_angles() const { return relative_; }
  /// Parameters (along the canonical direction) of the intersections on line k.
  const std::vector<double>& crossings(std::size_t k) const { return params_[k]; }
  /// Central zone; a single point for concurrent lines.
  const CentralZone& zone() const { return zone_; }
  Point2 zone_center() const;
  double zone_radius() const;

  /// Side mask of a point that lies off every line.
  std::uint64_t side_mask(const Point2& p) const;
  double param_on(std::size_t k, const Point2& p) const;
  std::int64_t interval_of(std::size_t k, double s) const;

 protected:
  std::vector<EdgeRef> edges_near(const Point2& p, double radius) const override;

 private:
  std::vector<Line> lines_;
  std::vector<double> relative_;
  std::vector<double> alphas_;
  std::vector<std::vector<double>> params_;
  CentralZone zone_;
};

}  // namespace tilebill
