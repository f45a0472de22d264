#include "tilebill/simulator.hpp"

#include <cmath>

namespace tilebill {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::max_steps: return "max_steps";
    case Termination::corner_hit: return "corner_hit";
    case Termination::escaped_arrangement: return "escaped_arrangement";
  }
  return "?";
}

std::optional<Termination> parse_termination(const std::string& s) {
  for (auto t : {Termination::max_steps, Termination::corner_hit, Termination::escaped_arrangement})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

TrajectoryState step(const Tiling& tiling, const TrajectoryState& s) {
  const Vec2 d = direction_vector(s.dir);
  // Lattice tilings step inside the reduced cell and rebuild the point from t,
  // so rounding does not grow with the distance from the origin.
  const bool lattice = tiling.translation_lattice().has_value();
  const EdgeRef from = lattice ? tiling.reduce(s.edge) : s.edge;
  const TileRef tile = lattice ? tiling.reduce_tile(s.tile, s.edge) : s.tile;
  const Point2 p = lattice ? tiling.edge_point(from, s.t) : s.point;
  const ExitHit hit = tiling.find_exit(tile, from, p, d);
  if (hit.status == ExitHit::Status::corner) throw CornerHit("trajectory hit a vertex");
  if (hit.status == ExitHit::Status::escaped) throw Escaped("trajectory left every line behind");
  const std::int64_t di = s.edge.i - from.i, dj = s.edge.j - from.j;
  TrajectoryState next;
  next.edge = hit.edge;
  next.tile = hit.next_tile;
  next.t = tiling.edge_param(hit.edge, hit.point);
  next.dir = refract_direction(s.dir, hit.line);
  next.point = hit.point;
  if (lattice) {
    next.edge.i += di;
    next.edge.j += dj;
    next.tile.i += di;
    next.tile.j += dj;
    next.point += tiling.cell_offset(s.edge);
  }
  return next;
}

Trajectory trace(const Tiling& tiling, const TrajectoryState& start, std::int64_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  Trajectory tr;
  tr.records.reserve(static_cast<std::size_t>(std::min<std::int64_t>(max_steps, 1 << 20)));
  tr.records.push_back({start, start.point, 0});
  TrajectoryState cur = start;
  for (std::int64_t k = 1; k < max_steps; ++k) {
    try {
      cur = step(tiling, cur);
    } catch (const CornerHit&) {
      tr.termination = Termination::corner_hit;
      return tr;
    } catch (const Escaped&) {
      tr.termination = Termination::escaped_arrangement;
      return tr;
    }
    tr.records.push_back({cur, cur.point, k});
  }
  tr.termination = Termination::max_steps;
  return tr;
}

double edge_angle(const Tiling& tiling, const TrajectoryState& s) {
  const Piece pc = tiling.edge_piece(s.edge);
  return angle_between(pc.direction, direction_vector(s.dir));
}

double angle_toward(double dir, const Point2& p, const Point2& v) {
  return angle_between(direction_vector(dir), Vec2(v - p));
}

std::optional<Point2> shared_vertex(const Tiling& tiling, const EdgeRef& a, const EdgeRef& b) {
  const Piece pa = tiling.edge_piece(a), pb = tiling.edge_piece(b);
  if (!pa.bounded() || !pb.bounded()) return std::nullopt;
  for (const Point2& u : {pa.at(pa.lo), pa.at(pa.hi)})
    for (const Point2& v : {pb.at(pb.lo), pb.at(pb.hi)})
      if ((u - v).norm() < 1e-9) return u;
  return std::nullopt;
}

std::vector<std::optional<TrihexLocal>> trihex_local(const Tiling& tiling, const Trajectory& tr) {
  if (tiling.spec().variant != TilingVariant::trihexagonal)
    throw std::invalid_argument("trihex_local needs the trihexagonal tiling");
  const std::size_t n = tr.size();
  std::vector<std::optional<TrihexLocal>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const TrajectoryState& s = tr.state(k);
    // Tile slot 0 is the hexagon; the triangle is either the tile entered now
    // or the one just left.
    std::optional<Point2> v;
    if (s.tile.slot != 0) {
      if (k + 1 < n) v = shared_vertex(tiling, s.edge, tr.state(k + 1).edge);
    } else if (k > 0) {
      v = shared_vertex(tiling, tr.state(k - 1).edge, s.edge);
    }
    if (!v) continue;
    out[k] = TrihexLocal{(*v - s.point).norm(), angle_toward(s.dir, s.point, *v), *v};
  }
  return out;
}

}  // namespace tilebill
