#pragma once
// Closed-form start conditions for the explicit orbits, each paired with the
// classification it should produce when traced.

#include "tilebill/classifier.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilebill {

struct InfeasibleConstruction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expected outcome. period == 0 means any period; `drift` is only checked
/// when set.
struct Expected {
  ClassKind kind = ClassKind::unknown;
  std::int64_t period = 0;
  std::optional<Vec2> drift;
};

struct ConstructionResult {
  TilingSpec spec;
  TrajectoryState start;
  Expected expected;
  std::string notes;
};

/// True iff the classification agrees with the expectation.
bool matches(const Expected& e, const Classification& c, double drift_tol = 1e-9);

/// Initial crossing angle alpha_1 + alpha_3 + ... + alpha_{n-2} for odd n.
double odd_periodic_angle(const std::vector<double>& alphas);

/// Start on l_0 at distance `radius` beyond the central zone, winding
/// counter-clockwise with crossing angle theta.
TrajectoryState arrangement_start(const LineArrangement& arr, double theta, double radius);

ConstructionResult odd_lines_periodic(const TilingSpec& arrangement);
ConstructionResult odd_lines_periodic(const std::vector<double>& alphas);
bool even_lines_condition(const std::vector<double>& alphas, double tol = 1e-9);
ConstructionResult three_lines_periodic(double alpha, double beta, double gamma);

ConstructionResult triangle_period6(const TilingSpec& spec, std::int64_t i = 0, std::int64_t j = 0);

/// Feasible interval of theta for the period-10 orbit, empty (lo >= hi) when
/// (alpha, beta) is outside the region.
std::pair<double, double> period10_theta_interval(double alpha, double beta);
bool period10_region(double alpha, double beta);
/// Largest l that keeps all ten crossings inside their edges.
double period10_l_max(double alpha, double beta, double theta);
/// NaN selects the midpoint of the feasible interval.
ConstructionResult triangle_period10(double alpha, double beta, double theta = std::nan(""),
                                     double l = std::nan(""));
/// Picks a feasible ordering of the triangle's angles.
ConstructionResult triangle_period10(const TilingSpec& spec);

ConstructionResult right_triangle_bisecting_escape(double alpha, double dir = kPi / 2.0);
ConstructionResult right_triangle_drift(int n);

/// Trihexagonal starts sit on the base of the up triangle of cell (0, 0);
/// x1 is measured from its right end and the ray enters the triangle at
/// angle alpha to that base.
TrajectoryState trihex_start(const Tiling& tiling, double x1, double alpha);
ConstructionResult trihex_period6(double x1 = 0.5);
ConstructionResult trihex_period12(double x1 = 0.25);
ConstructionResult trihex_period24(double x1 = 0.125, double angle_offset = 0.0);
double trihex_drift_6n_angle(int n);
ConstructionResult trihex_drift_6n(int n);
double trihex_drift_12n_minus_6_angle(int n);
ConstructionResult trihex_drift_12n_minus_6(int n);

/// Named access for the CLI and the session protocol. `angles` feeds the
/// line constructions.
struct ConstructionParams {
  std::map<std::string, double> values;
  std::vector<double> angles;
};
ConstructionResult construct(const std::string& name, const ConstructionParams& params);
std::vector<std::string> construction_names();

}  // namespace tilebill
