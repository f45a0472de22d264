#pragma once
// Asymptotic type of a traced trajectory with a replayable witness.

#include "tilebill/line_arrangement.hpp"
#include "tilebill/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tilebill {

inline constexpr double kDefaultMatchEps = 1e-7;

enum class ClassKind { periodic, drift_periodic, escaped, spiraling, corner_hit, unknown };

const char* to_string(ClassKind k);
std::optional<ClassKind> parse_class_kind(const std::string& s);

/// Per-cycle change of the crossing angle in a line arrangement.
/// `delta` is theta_{i+n} - theta_i taken at even n-blocks; for odd n the
/// blocks alternate in sign, which `alternating` records.
struct SpiralWitness {
  double delta = 0.0;
  int cycles = 0;
  bool alternating = false;
};

struct Classification {
  ClassKind kind = ClassKind::unknown;
  std::int64_t period = 0;
  Vec2 drift = Vec2::Zero();
  std::optional<SpiralWitness> spiral;
  // Witness: index pair whose states matched, their residual and the
  // tolerance used.
  std::int64_t first_index = 0;
  std::int64_t repeat_index = 0;
  double residual = 0.0;
  double eps_match = kDefaultMatchEps;
  std::int64_t steps = 0;
};

/// Larger of the point distance and the circular direction difference
/// between two states. Infinite when they sit on different edges or enter
/// different tiles. With `reduced` the comparison is modulo the lattice.
double state_residual(const Tiling& tiling, const TrajectoryState& a, const TrajectoryState& b,
                      bool reduced);

Classification classify_trajectory(const Tiling& tiling, const Trajectory& tr,
                                   double eps_match = kDefaultMatchEps);
Classification classify(const Tiling& tiling, const TrajectoryState& start, std::int64_t max_steps,
                        double eps_match = kDefaultMatchEps);

/// Crossing angle at every record: angle between the outgoing direction and
/// the crossed line's ray pointing toward the central zone.
std::vector<double> crossing_angles(const LineArrangement& arr, const Trajectory& tr);

/// First 2n crossings stay outside the central zone and do not escape.
bool is_good(const LineArrangement& arr, const Trajectory& tr);

/// Trajectory winds counter-clockwise around the central zone at its start.
bool winds_ccw(const LineArrangement& arr, const TrajectoryState& s);

/// Constant per-cycle angle change over the good prefix of the trace, or
/// nullopt when the trace is not good or the deltas are not constant within
/// `tol`, or when they vanish.
std::optional<SpiralWitness> detect_spiral(const LineArrangement& arr, const Trajectory& tr,
                                           double tol = 1e-9);

/// Lengths of the good prefix: number of leading records whose segments
/// stay outside the central zone.
std::size_t good_prefix(const LineArrangement& arr, const Trajectory& tr);

/// True iff no two consecutive crossings both lie on legs of a right
/// triangle tiling.
bool escape_certificate_right_triangle(const Tiling& tiling, const Trajectory& tr);

}  // namespace tilebill
