#pragma once
// Trajectory iteration. A ray entering a tile runs to the exit edge and
// continues into the neighbor with its direction mirrored across that edge.

#include "tilebill/tiling.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tilebill {

struct Escaped : TilingError {
  using TilingError::TilingError;
};

struct CrossingRecord {
  TrajectoryState state;
  Point2 point = Point2::Zero();
  std::int64_t step = 0;
};

enum class Termination { max_steps, corner_hit, escaped_arrangement };

const char* to_string(Termination t);
std::optional<Termination> parse_termination(const std::string& s);

struct Trajectory {
  std::vector<CrossingRecord> records;
  Termination termination = Termination::max_steps;

  std::size_t size() const { return records.size(); }
  const TrajectoryState& state(std::size_t k) const { return records[k].state; }
};

/// Advances one crossing. Throws CornerHit or Escaped.
TrajectoryState step(const Tiling& tiling, const TrajectoryState& s);

/// Records the start and every following crossing, at most max_steps records.
Trajectory trace(const Tiling& tiling, const TrajectoryState& start, std::int64_t max_steps);

/// Angle in (0, pi) between the direction of travel and the edge's canonical
/// orientation.
double edge_angle(const Tiling& tiling, const TrajectoryState& s);

/// Angle in (0, pi) between a direction and the ray from p toward v.
double angle_toward(double dir, const Point2& p, const Point2& v);

/// Vertex shared by two edges, if any.
std::optional<Point2> shared_vertex(const Tiling& tiling, const EdgeRef& a, const EdgeRef& b);

/// Local (x, alpha) coordinates of the trihexagonal tiling at every crossing.
///
/// Each edge borders exactly one triangle; the trajectory passes through that
/// triangle either just before or just after the crossing, cutting off the
/// corner V shared by the two edges it meets there. x is |p V| and alpha is the
/// angle at p between the trajectory and the segment p V. Entries are empty
/// when the neighboring crossing that fixes V is not in the trace.
struct TrihexLocal {
  double x = 0.0;
  double alpha = 0.0;
  Point2 vertex = Point2::Zero();
};
std::vector<std::optional<TrihexLocal>> trihex_local(const Tiling& tiling, const Trajectory& tr);

}  // namespace tilebill
