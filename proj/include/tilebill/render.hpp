#pragma once
// SVG 1.1 figures of a tiling with trajectories drawn over it. Coordinates
// are written in tiling units with six decimals under one flipping transform,
// so every polyline vertex is the crossing point itself.

#include "tilebill/io.hpp"
#include "tilebill/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tilebill {

struct Viewport {
  double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

/// Stroke widths are in output pixels.
struct RenderStyle {
  double width_px = 800.0;
  std::string background = "#ffffff";
  std::string fill_light = "#f4f1e8";
  std::string fill_dark = "#d5dde6";
  std::string edge_color = "#6b6b6b";
  double edge_width = 0.75;
  std::vector<std::string> trajectory_colors{"#c0392b", "#1f5fa8", "#2e8b57", "#8e44ad"};
  double trajectory_width = 2.0;
  double start_radius = 3.5;  // marker at the first record, 0 disables
};

Json to_json(const RenderStyle& s);
/// Missing keys keep their defaults; throws std::invalid_argument on bad values.
RenderStyle render_style_from_json(const Json& j);

/// Bounding box of every trajectory point padded by two edge lengths. With no
/// points the box surrounds the central zone or cell (0, 0).
Viewport auto_fit(const Tiling& tiling, const std::vector<Trajectory>& trajectories);

/// Throws std::invalid_argument for an empty viewport.
std::string render_svg(const Tiling& tiling, const std::vector<Trajectory>& trajectories,
                       const std::optional<Viewport>& viewport = std::nullopt, const RenderStyle& style = {});
std::string render_svg(const TilingSpec& spec, const std::vector<Trajectory>& trajectories,
                       const std::optional<Viewport>& viewport = std::nullopt, const RenderStyle& style = {});

/// Convex polygon clipped to a half plane {p : normal . p <= offset}.
std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, const Vec2& normal, double offset);
std::vector<Point2> clip_to_viewport(const std::vector<Point2>& poly, const Viewport& vp);

}  // namespace tilebill
