#include "tilebill/render.hpp"

#include "tilebill/line_arrangement.hpp"
#include "tilebill/periodic_tiling.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tilebill {

namespace {

// Tilings needing more tiles than this inside the viewport are drawn as
// trajectories only.
constexpr std::size_t kMaxTiles = 40000;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string points_attr(const std::vector<Point2>& pts) {
  std::string out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0) out += ' ';
    out += num(pts[k].x());
    out += ',';
    out += num(pts[k].y());
  }
  return out;
}

double area(const std::vector<Point2>& poly) {
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) a += cross2(poly[k], poly[(k + 1) % poly.size()]);
  return 0.5 * a;
}

std::vector<Point2> rectangle(const Viewport& vp) {
  return {{vp.xmin, vp.ymin}, {vp.xmax, vp.ymin}, {vp.xmax, vp.ymax}, {vp.xmin, vp.ymax}};
}

struct Cell {
  std::vector<Point2> poly;
  int color = -1;
};

std::vector<Cell> arrangement_cells(const LineArrangement& arr, const Viewport& vp) {
  std::vector<std::vector<Point2>> cells{rectangle(vp)};
  for (const Line& l : arr.lines()) {
    std::vector<std::vector<Point2>> next;
    for (const auto& c : cells) {
      for (double side : {1.0, -1.0}) {
        auto piece = clip_half_plane(c, side * l.normal, side * l.offset);
        if (piece.size() >= 3 && std::abs(area(piece)) > 1e-12) next.push_back(std::move(piece));
      }
    }
    cells = std::move(next);
  }
  std::vector<Cell> out;
  for (auto& c : cells) {
    Point2 m = Point2::Zero();
    for (const auto& p : c) m += p;
    m /= static_cast<double>(c.size());
    out.push_back({std::move(c), std::popcount(arr.side_mask(m)) & 1});
  }
  return out;
}

std::vector<Cell> periodic_cells(const PeriodicTiling& pt, const Viewport& vp, bool& truncated) {
  std::vector<Cell> out;
  const auto tiles = pt.tiles_in_box({vp.xmin, vp.ymin}, {vp.xmax, vp.ymax});
  if (tiles.size() > kMaxTiles) {
    truncated = true;
    return out;
  }
  for (const TileRef& t : tiles) {
    auto poly = clip_to_viewport(pt.polygon(t), vp);
    if (poly.size() < 3 || std::abs(area(poly)) < 1e-12) continue;
    out.push_back({std::move(poly), pt.two_colorable() ? pt.tile_color(t) : -1});
  }
  return out;
}

}  // namespace

std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, const Vec2& normal, double offset) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2& a = poly[k];
    const Point2& b = poly[(k + 1) % n];
    const double da = normal.dot(a) - offset, db = normal.dot(b) - offset;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) out.push_back(a + (da / (da - db)) * (b - a));
  }
  return out;
}

std::vector<Point2> clip_to_viewport(const std::vector<Point2>& poly, const Viewport& vp) {
  auto p = clip_half_plane(poly, Vec2(-1, 0), -vp.xmin);
  p = clip_half_plane(p, Vec2(1, 0), vp.xmax);
  p = clip_half_plane(p, Vec2(0, -1), -vp.ymin);
  return clip_half_plane(p, Vec2(0, 1), vp.ymax);
}

Json to_json(const RenderStyle& s) {
  return {{"width_px", s.width_px},
          {"background", s.background},
          {"fill_light", s.fill_light},
          {"fill_dark", s.fill_dark},
          {"edge_color", s.edge_color},
          {"edge_width", s.edge_width},
          {"trajectory_colors", s.trajectory_colors},
          {"trajectory_width", s.trajectory_width},
          {"start_radius", s.start_radius}};
}

RenderStyle render_style_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("style must be a JSON object");
  RenderStyle s;
  auto positive = [&](const char* key, double& field, bool allow_zero) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string("style ") + key + " must be a number");
    field = j.at(key).get<double>();
    if (!(allow_zero ? field >= 0.0 : field > 0.0) || !std::isfinite(field))
      throw std::invalid_argument(std::string("style ") + key + " out of range");
  };
  auto color = [&](const char* key, std::string& field) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) throw std::invalid_argument(std::string("style ") + key + " must be a string");
    field = j.at(key).get<std::string>();
  };
  positive("width_px", s.width_px, false);
  positive("edge_width", s.edge_width, true);
  positive("trajectory_width", s.trajectory_width, false);
  positive("start_radius", s.start_radius, true);
  color("background", s.background);
  color("fill_light", s.fill_light);
  color("fill_dark", s.fill_dark);
  color("edge_color", s.edge_color);
  if (j.contains("trajectory_colors")) {
    const Json& c = j.at("trajectory_colors");
    if (!c.is_array() || c.empty()) throw std::invalid_argument("style trajectory_colors must be a non-empty array");
    s.trajectory_colors.clear();
    for (const Json& x : c) {
      if (!x.is_string()) throw std::invalid_argument("style trajectory_colors must hold strings");
      s.trajectory_colors.push_back(x.get<std::string>());
    }
  }
  return s;
}

Viewport auto_fit(const Tiling& tiling, const std::vector<Trajectory>& trajectories) {
  const double pad = 2.0 * tiling.typical_edge_length();
  Viewport vp{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  auto grow = [&](const Point2& p) {
    vp.xmin = std::min(vp.xmin, p.x());
    vp.ymin = std::min(vp.ymin, p.y());
    vp.xmax = std::max(vp.xmax, p.x());
    vp.ymax = std::max(vp.ymax, p.y());
  };
  for (const auto& tr : trajectories)
    for (const auto& r : tr.records) grow(r.point);
  if (!std::isfinite(vp.xmin)) {
    if (const auto* arr = dynamic_cast<const LineArrangement*>(&tiling)) {
      grow(arr->zone_center());
      for (const auto& v : arr->zone().vertices) grow(v);
    } else if (const auto lat = tiling.translation_lattice()) {
      grow(Point2::Zero());
      grow(lat->first);
      grow(lat->second);
      grow(lat->first + lat->second);
    } else {
      grow(Point2::Zero());
    }
  }
  vp.xmin -= pad;
  vp.ymin -= pad;
  vp.xmax += pad;
  vp.ymax += pad;
  return vp;
}

std::string render_svg(const Tiling& tiling, const std::vector<Trajectory>& trajectories,
                       const std::optional<Viewport>& viewport, const RenderStyle& style) {
  const Viewport vp = viewport ? *viewport : auto_fit(tiling, trajectories);
  if (!(vp.width() > 0.0) || !(vp.height() > 0.0) || !std::isfinite(vp.width()) || !std::isfinite(vp.height()))
    throw std::invalid_argument("viewport must have positive area");
  const double scale = style.width_px / vp.width();
  const double w = style.width_px, h = vp.height() * scale;

  bool truncated = false;
  std::vector<Cell> cells;
  if (const auto* arr = dynamic_cast<const LineArrangement*>(&tiling))
    cells = arrangement_cells(*arr, vp);
  else if (const auto* pt = dynamic_cast<const PeriodicTiling*>(&tiling))
    cells = periodic_cells(*pt, vp, truncated);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"" << style.background
     << "\"/>\n";
  os << "<g transform=\"matrix(" << num(scale) << " 0 0 " << num(-scale) << " " << num(-vp.xmin * scale) << " "
     << num(vp.ymax * scale) << ")\">\n";
  os << "<g id=\"tiling\" stroke=\"" << style.edge_color << "\" stroke-width=\"" << num(style.edge_width / scale)
     << "\" stroke-linejoin=\"round\">\n";
  if (truncated) os << "<!-- tiling omitted: more than " << kMaxTiles << " tiles in view -->\n";
  for (const auto& c : cells) {
    const char* fill = "none";
    if (c.color == 0) fill = style.fill_light.c_str();
    if (c.color == 1) fill = style.fill_dark.c_str();
    os << "<polygon points=\"" << points_attr(c.poly) << "\" fill=\"" << fill << "\"/>\n";
  }
  os << "</g>\n";
  os << "<g id=\"trajectories\" fill=\"none\" stroke-width=\"" << num(style.trajectory_width / scale)
     << "\" stroke-linejoin=\"round\" stroke-linecap=\"round\">\n";
  for (std::size_t k = 0; k < trajectories.size(); ++k) {
    const auto& color = style.trajectory_colors[k % style.trajectory_colors.size()];
    std::vector<Point2> pts;
    pts.reserve(trajectories[k].size());
    for (const auto& r : trajectories[k].records) pts.push_back(r.point);
    os << "<polyline class=\"trajectory\" data-index=\"" << k << "\" stroke=\"" << color << "\" points=\""
       << points_attr(pts) << "\"/>\n";
    if (style.start_radius > 0.0 && !pts.empty())
      os << "<circle class=\"start\" cx=\"" << num(pts.front().x()) << "\" cy=\"" << num(pts.front().y())
         << "\" r=\"" << num(style.start_radius / scale) << "\" fill=\"" << color << "\" stroke=\"none\"/>\n";
  }
  os << "</g>\n</g>\n</svg>\n";
  return os.str();
}

std::string render_svg(const TilingSpec& spec, const std::vector<Trajectory>& trajectories,
                       const std::optional<Viewport>& viewport, const RenderStyle& style) {
  return render_svg(*make_tiling(spec), trajectories, viewport, style);
}

}  // namespace tilebill
