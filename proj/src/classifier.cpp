#include "tilebill/classifier.hpp"

#include <cmath>
#include <limits>

namespace tilebill {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Residual below which a recurrence counts as exact rather than a near miss.
constexpr double kExactResidual = 1e-10;

struct Match {
  double residual = kInf;
  std::int64_t di = 0, dj = 0;
};

Match match_states(const Tiling& tiling, const TrajectoryState& a, const TrajectoryState& b) {
  const CanonicalState ca = tiling.canonical(a), cb = tiling.canonical(b);
  Match m;
  if (ca.reduced.edge != cb.reduced.edge || ca.reduced.tile != cb.reduced.tile) return m;
  m.residual = std::max((ca.reduced.point - cb.reduced.point).norm(),
                        circular_distance(ca.reduced.dir, cb.reduced.dir));
  m.di = cb.cell_i - ca.cell_i;
  m.dj = cb.cell_j - ca.cell_j;
  return m;
}

Vec2 lattice_vector(const Tiling& tiling, std::int64_t di, std::int64_t dj) {
  const auto lat = tiling.translation_lattice();
  if (!lat) return Vec2::Zero();
  return static_cast<double>(di) * lat->first + static_cast<double>(dj) * lat->second;
}

}  // namespace

const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::periodic: return "periodic";
    case ClassKind::drift_periodic: return "drift_periodic";
    case ClassKind::escaped: return "escaped";
    case ClassKind::spiraling: return "spiraling";
    case ClassKind::corner_hit: return "corner_hit";
    case ClassKind::unknown: return "unknown";
  }
  return "?";
}

std::optional<ClassKind> parse_class_kind(const std::string& s) {
  for (auto k : {ClassKind::periodic, ClassKind::drift_periodic, ClassKind::escaped,
                 ClassKind::spiraling, ClassKind::corner_hit, ClassKind::unknown})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

double state_residual(const Tiling& tiling, const TrajectoryState& a, const TrajectoryState& b,
                      bool reduced) {
  if (reduced) return match_states(tiling, a, b).residual;
  if (a.edge != b.edge || a.tile != b.tile) return kInf;
  return std::max((a.point - b.point).norm(), circular_distance(a.dir, b.dir));
}

Classification classify_trajectory(const Tiling& tiling, const Trajectory& tr, double eps_match) {
  Classification c;
  c.eps_match = eps_match;
  const auto n = static_cast<std::int64_t>(tr.size());
  c.steps = n;
  const TrajectoryState& s0 = tr.state(0);

  for (std::int64_t p = 1; p < n; ++p) {
    Match m = match_states(tiling, s0, tr.state(p));
    if (!(m.residual < eps_match)) continue;
    std::int64_t period = p;
    // A near miss whose multiple closes exactly is the true period.
    if (m.residual > kExactResidual) {
      for (int k : {2, 3, 4, 6}) {
        if (k * p >= n) break;
        const Match mk = match_states(tiling, s0, tr.state(k * p));
        if (mk.residual < kExactResidual) {
          period = k * p;
          m = mk;
          break;
        }
      }
    }
    if (2 * period >= n) break;
    const Match again = match_states(tiling, tr.state(period), tr.state(2 * period));
    if (!(again.residual < eps_match) || again.di != m.di || again.dj != m.dj) continue;
    c.period = period;
    c.first_index = 0;
    c.repeat_index = period;
    c.residual = m.residual;
    if (m.di == 0 && m.dj == 0) {
      c.kind = ClassKind::periodic;
    } else {
      c.kind = ClassKind::drift_periodic;
      c.drift = lattice_vector(tiling, m.di, m.dj);
    }
    return c;
  }

  const auto* arr = dynamic_cast<const LineArrangement*>(&tiling);
  if (arr != nullptr) c.spiral = detect_spiral(*arr, tr);
  if (tr.termination == Termination::escaped_arrangement) {
    c.kind = ClassKind::escaped;
  } else if (tr.termination == Termination::corner_hit) {
    c.kind = ClassKind::corner_hit;
  } else if (c.spiral) {
    c.kind = ClassKind::spiraling;
  } else if (tiling.spec().variant == TilingVariant::right_triangle &&
             escape_certificate_right_triangle(tiling, tr)) {
    c.kind = ClassKind::escaped;
  }
  return c;
}

Classification classify(const Tiling& tiling, const TrajectoryState& start, std::int64_t max_steps,
                        double eps_match) {
  if (max_steps < 2) throw std::invalid_argument("classify needs max_steps >= 2");
  return classify_trajectory(tiling, trace(tiling, start, max_steps), eps_match);
}

std::vector<double> crossing_angles(const LineArrangement& arr, const Trajectory& tr) {
  std::vector<double> out;
  out.reserve(tr.size());
  for (const auto& rec : tr.records) {
    const auto k = static_cast<std::size_t>(rec.state.edge.i);
    const auto& ps = arr.crossings(k);
    const double s = arr.param_on(k, rec.point);
    const double mid = 0.5 * (ps.front() + ps.back());
    const Vec2 u = arr.lines()[k].direction();
    const Vec2 toward = s > mid ? Vec2(-u) : u;
    out.push_back(angle_between(direction_vector(rec.state.dir), toward));
  }
  return out;
}

std::size_t good_prefix(const LineArrangement& arr, const Trajectory& tr) {
  const auto& zone = arr.zone();
  std::size_t m = 0;
  for (; m + 1 < tr.size(); ++m) {
    const Point2& a = tr.records[m].point;
    const Point2& b = tr.records[m + 1].point;
    if (zone.contains(a, -1e-12) || zone.segment_enters(a, b)) break;
  }
  return m;
}

bool is_good(const LineArrangement& arr, const Trajectory& tr) {
  return good_prefix(arr, tr) >= 2 * arr.size();
}

bool winds_ccw(const LineArrangement& arr, const TrajectoryState& s) {
  return cross2(Vec2(s.point - arr.zone_center()), direction_vector(s.dir)) > 0.0;
}

std::optional<SpiralWitness> detect_spiral(const LineArrangement& arr, const Trajectory& tr,
                                           double tol) {
  if (!is_good(arr, tr)) return std::nullopt;
  const std::size_t n = arr.size();
  const std::size_t m = good_prefix(arr, tr);
  const auto theta = crossing_angles(arr, tr);
  std::vector<double> blocks;
  for (std::size_t k = 0; (k + 1) * n <= m; ++k) blocks.push_back(theta[(k + 1) * n] - theta[k * n]);
  if (blocks.size() < 2) return std::nullopt;
  const bool odd = n % 2 == 1;
  for (std::size_t k = 1; k < blocks.size(); ++k) {
    const double expect = odd && k % 2 == 1 ? -blocks[0] : blocks[0];
    if (std::abs(blocks[k] - expect) > tol) return std::nullopt;
  }
  SpiralWitness w;
  w.alternating = odd;
  if (odd) {
    w.delta = blocks[0];
    w.cycles = static_cast<int>((blocks.size() + 1) / 2);
  } else {
    w.delta = 2.0 * blocks[0];
    w.cycles = static_cast<int>(blocks.size() / 2);
  }
  if (std::abs(w.delta) <= tol || w.cycles < 1) return std::nullopt;
  return w;
}

bool escape_certificate_right_triangle(const Tiling& tiling, const Trajectory& tr) {
  if (tiling.spec().variant != TilingVariant::right_triangle)
    throw std::invalid_argument("escape certificate needs a right triangle tiling");
  const auto names = tiling.edge_slot_names();
  auto leg = [&](const TrajectoryState& s) { return names.at(s.edge.slot) != "hypotenuse"; };
  for (std::size_t k = 0; k + 1 < tr.size(); ++k)
    if (leg(tr.state(k)) && leg(tr.state(k + 1))) return false;
  return true;
}

}  // namespace tilebill
