#include "tilebill/constructions.hpp"

#include "tilebill/periodic_tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tilebill {

namespace {

const double kSqrt3 = std::sqrt(3.0);

Expected expect(ClassKind kind, std::int64_t period = 0) {
  Expected e;
  e.kind = kind;
  e.period = period;
  return e;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

bool matches(const Expected& e, const Classification& c, double drift_tol) {
  if (e.kind != c.kind) return false;
  if (e.period > 0 && e.period != c.period) return false;
  if (e.drift && (*e.drift - c.drift).norm() > drift_tol) return false;
  return true;
}

double odd_periodic_angle(const std::vector<double>& alphas) {
  double theta = 0.0;
  for (std::size_t k = 1; k + 1 < alphas.size(); k += 2) theta += alphas[k];
  return theta;
}

TrajectoryState arrangement_start(const LineArrangement& arr, double theta, double radius) {
  const Line& l0 = arr.lines().front();
  const auto& ps = arr.crossings(0);
  const double s = ps.back() + radius;
  const Vec2 u = l0.direction();
  const Point2 p = l0.anchor() + s * u;
  return arr.state_from_point(p, angle_of(u) + kPi - theta).state;
}

ConstructionResult odd_lines_periodic(const TilingSpec& arrangement) {
  auto tiling = make_tiling(arrangement);
  const auto* arr = dynamic_cast<const LineArrangement*>(tiling.get());
  if (arr == nullptr) throw InvalidSpec("odd_lines_periodic needs a line arrangement");
  const std::size_t n = arr->size();
  if (n < 3 || n % 2 == 0) throw InfeasibleConstruction("odd_lines_periodic needs an odd number of lines, at least 3");
  const double theta = odd_periodic_angle(arr->alphas());
  ConstructionResult r;
  r.spec = arrangement;
  r.start = arrangement_start(*arr, theta, 10.0 * (arr->zone_radius() + 1.0));
  r.expected = expect(ClassKind::periodic, static_cast<std::int64_t>(2 * n));
  r.notes = "initial crossing angle " + std::to_string(theta);
  return r;
}

ConstructionResult odd_lines_periodic(const std::vector<double>& alphas) {
  if (std::abs(sum(alphas) - kPi) > 1e-9) throw InvalidSpec("angles must sum to pi");
  return odd_lines_periodic(TilingSpec::concurrent_lines(alphas));
}

bool even_lines_condition(const std::vector<double>& alphas, double tol) {
  if (alphas.size() < 2 || alphas.size() % 2 == 1) throw std::invalid_argument("needs an even number of angles");
  double alt = 0.0;
  for (std::size_t k = 0; k < alphas.size(); ++k) alt += k % 2 == 0 ? alphas[k] : -alphas[k];
  return std::abs(alt) <= tol;
}

ConstructionResult three_lines_periodic(double alpha, double beta, double gamma) {
  if (!(alpha > 0 && beta > 0 && gamma > 0) || std::abs(alpha + beta + gamma - kPi) > 1e-9)
    throw InvalidSpec("three positive angles summing to pi are required");
  auto r = odd_lines_periodic(std::vector<double>{alpha, beta, gamma});
  r.expected = expect(ClassKind::periodic, 6);
  return r;
}

ConstructionResult triangle_period6(const TilingSpec& spec, std::int64_t i, std::int64_t j) {
  auto tiling = make_tiling(spec);
  const auto* pt = dynamic_cast<const PeriodicTiling*>(tiling.get());
  if (pt == nullptr || spec.is_arrangement()) throw InvalidSpec("triangle_period6 needs a triangle tiling");
  (void)spec.triangle_angles();
  const Point2 v = pt->cell_origin(i, j);
  // Lines and edge lengths around the vertex.
  struct Ray {
    double angle, length;
  };
  std::vector<Ray> rays;
  std::vector<double> lines;
  for (const auto& t : pt->tiles_in_box(v - Vec2(1, 1), v + Vec2(1, 1))) {
    const auto poly = pt->polygon(t);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Point2 a = poly[k], b = poly[(k + 1) % poly.size()];
      Point2 far;
      if ((a - v).norm() < 1e-9) far = b;
      else if ((b - v).norm() < 1e-9) far = a;
      else continue;
      const double ang = angle_of(Vec2(far - v));
      rays.push_back({ang, (far - v).norm()});
      const double la = normalize_line_angle(ang);
      if (std::none_of(lines.begin(), lines.end(), [&](double x) { return circular_distance(2 * x, 2 * la) < 1e-9; }))
        lines.push_back(la);
    }
  }
  if (lines.size() != 3) throw InvalidSpec("vertex is not the meeting point of three lines");
  std::sort(lines.begin(), lines.end());
  const std::vector<double> alphas{lines[1] - lines[0], lines[2] - lines[1], kPi - lines[2] + lines[0]};
  const double theta = alphas[1];

  auto model = make_tiling(TilingSpec::concurrent_lines(alphas));
  const auto& arr = dynamic_cast<const LineArrangement&>(*model);
  const Trajectory tr = trace(arr, arrangement_start(arr, theta, 1.0), 7);
  double worst = 0.0;
  for (const auto& rec : tr.records) {
    const double ang = normalize_direction(angle_of(rec.point) + lines[0]);
    double len = std::numeric_limits<double>::infinity();
    for (const auto& ray : rays)
      if (circular_distance(ray.angle, ang) < 1e-7) len = std::min(len, ray.length);
    worst = std::max(worst, rec.point.norm() / len);
  }
  const double r = 0.5 / worst;
  ConstructionResult res;
  res.spec = spec;
  res.start = tiling->state_from_point(v + r * direction_vector(lines[0]), lines[0] + kPi - theta).state;
  res.expected = expect(ClassKind::periodic, 6);
  res.notes = "orbit around vertex (" + std::to_string(i) + ", " + std::to_string(j) + ")";
  return res;
}

std::pair<double, double> period10_theta_interval(double alpha, double beta) {
  const double lo = std::max({0.0, beta - 2 * alpha, 2 * beta + 2 * alpha - kPi, alpha});
  const double hi = std::min({kPi, kPi - 2 * alpha, 2 * beta - alpha, beta + 2 * alpha});
  return {lo, hi};
}

bool period10_region(double alpha, double beta) {
  // Angles recovered from a spec carry rounding; boundary cases stay outside.
  constexpr double m = 1e-9;
  return alpha > m && beta > m && alpha + beta < kPi - m && kPi > beta + 2 * alpha + m &&
         kPi / 3 > alpha + m && beta > alpha + m;
}

namespace {

TrajectoryState period10_start(const Tiling& tiling, double theta, double l) {
  return tiling.state_from_point(Point2(1.0 - l, 0.0), kPi - theta).state;
}

}  // namespace

double period10_l_max(double alpha, double beta, double theta) {
  auto tiling = make_tiling(TilingSpec::triangle(alpha, beta));
  // Crossing positions are affine in l while the combinatorics are fixed, so
  // two nearby samples determine where the first crossing reaches a vertex.
  const double l1 = 1e-3, l2 = 2e-3;
  const Trajectory a = trace(*tiling, period10_start(*tiling, theta, l1), 11);
  const Trajectory b = trace(*tiling, period10_start(*tiling, theta, l2), 11);
  if (a.size() < 11 || b.size() < 11) throw InfeasibleConstruction("period-10 orbit hits a vertex");
  double lmax = 1.0;
  for (std::size_t k = 0; k < 11; ++k) {
    if (a.state(k).edge != b.state(k).edge) throw InfeasibleConstruction("period-10 combinatorics unstable");
    const Piece pc = tiling->edge_piece(a.state(k).edge);
    const double len = pc.hi - pc.lo;
    const double s1 = a.state(k).t * len, s2 = b.state(k).t * len;
    const double slope = (s2 - s1) / (l2 - l1);
    if (std::abs(slope) < 1e-12) continue;
    const double s0 = s1 - slope * l1;
    for (double target : {0.0, len}) {
      const double root = (target - s0) / slope;
      if (root > 1e-9) lmax = std::min(lmax, root);
    }
  }
  return lmax;
}

ConstructionResult triangle_period10(double alpha, double beta, double theta, double l) {
  if (!period10_region(alpha, beta))
    throw InfeasibleConstruction("(alpha, beta) outside the period-10 region");
  const auto [lo, hi] = period10_theta_interval(alpha, beta);
  if (std::isnan(theta)) theta = 0.5 * (lo + hi);
  if (!(theta > lo && theta < hi)) throw InfeasibleConstruction("theta outside its feasible interval");
  const double lmax = period10_l_max(alpha, beta, theta);
  if (std::isnan(l)) l = 0.5 * lmax;
  if (!(l > 0 && l < lmax)) throw InfeasibleConstruction("l outside (0, " + std::to_string(lmax) + ")");
  ConstructionResult r;
  r.spec = TilingSpec::triangle(alpha, beta);
  auto tiling = make_tiling(r.spec);
  r.start = period10_start(*tiling, theta, l);
  r.expected = expect(ClassKind::periodic, 10);
  r.notes = "theta in (" + std::to_string(lo) + ", " + std::to_string(hi) + "), l in (0, " +
            std::to_string(lmax) + ")";
  return r;
}

ConstructionResult triangle_period10(const TilingSpec& spec) {
  const auto [a, b] = spec.triangle_angles();
  const double c = kPi - a - b;
  const std::pair<double, double> orders[] = {{a, b}, {b, a}, {a, c}, {c, a}, {b, c}, {c, b}};
  for (const auto& [x, y] : orders)
    if (period10_region(x, y)) return triangle_period10(x, y);
  throw InfeasibleConstruction("no ordering of the triangle's angles lies in the period-10 region");
}

ConstructionResult right_triangle_bisecting_escape(double alpha, double dir) {
  ConstructionResult r;
  r.spec = TilingSpec::right_triangle(alpha);
  auto tiling = make_tiling(r.spec);
  r.start = tiling->canonicalize_state({0, 0, 1}, 0.5, dir).state;
  // At alpha = pi/(2n) the bisecting orbit closes up to a translation, which
  // is unbounded as well.
  const double m = kPi / (2.0 * alpha);
  const bool drift = std::abs(m - std::round(m)) < 1e-9;
  r.expected = expect(drift ? ClassKind::drift_periodic : ClassKind::escaped);
  r.notes = "start at a hypotenuse midpoint";
  return r;
}

ConstructionResult right_triangle_drift(int n) {
  if (n < 2) throw InfeasibleConstruction("right_triangle_drift needs n >= 2");
  ConstructionResult r;
  r.spec = TilingSpec::right_triangle(kPi / (2.0 * n));
  auto tiling = make_tiling(r.spec);
  r.start = tiling->canonicalize_state({0, 0, 0}, 0.5, kPi / 2.0).state;
  r.expected = expect(ClassKind::drift_periodic);
  r.notes = "perpendicular bisector of the short leg";
  return r;
}

TrajectoryState trihex_start(const Tiling& tiling, double x1, double alpha) {
  if (!(x1 > 0.0 && x1 < 1.0)) throw InfeasibleConstruction("x1 must lie in (0, 1)");
  const Point2 right(0.5, kSqrt3 / 2.0);
  return tiling.state_from_point(right - Vec2(x1, 0.0), alpha).state;
}

namespace {

ConstructionResult trihex(double x1, double alpha, Expected e, std::string notes) {
  ConstructionResult r;
  r.spec = TilingSpec::trihexagonal();
  auto tiling = make_tiling(r.spec);
  r.start = trihex_start(*tiling, x1, alpha);
  r.expected = e;
  r.notes = std::move(notes);
  return r;
}

}  // namespace

ConstructionResult trihex_period6(double x1) {
  return trihex(x1, kPi / 3.0, expect(ClassKind::periodic, 6), "every crossing at pi/3");
}

ConstructionResult trihex_period12(double x1) {
  if (!(x1 > 0.0 && x1 < 0.5)) throw InfeasibleConstruction("x1 must lie in (0, 1/2)");
  return trihex(x1, kPi / 2.0, expect(ClassKind::periodic, 12), "crossings at pi/2 and pi/6");
}

ConstructionResult trihex_period24(double x1, double angle_offset) {
  if (!(x1 > 0.0 && x1 < 0.25)) throw InfeasibleConstruction("x1 must lie in (0, 1/4)");
  return trihex(x1, kPi - std::atan(2.0 * kSqrt3) + angle_offset, expect(ClassKind::periodic, 24),
                "cot(alpha) = -1/(2 sqrt 3)");
}

double trihex_drift_6n_angle(int n) {
  return kPi - std::atan(3.0 * n * kSqrt3 / (3.0 * n - 2.0));
}

ConstructionResult trihex_drift_6n(int n) {
  if (n < 1) throw InfeasibleConstruction("trihex_drift_6n needs n >= 1");
  // Vertex hits sit at multiples of 1/n along the start edge.
  return trihex(0.5 / n, trihex_drift_6n_angle(n), expect(ClassKind::drift_periodic, 6 * n),
                "x1 = 1/(2n)");
}

double trihex_drift_12n_minus_6_angle(int n) { return std::atan((6.0 * n - 3.0) * kSqrt3); }

ConstructionResult trihex_drift_12n_minus_6(int n) {
  if (n < 2) throw InfeasibleConstruction("trihex_drift_12n_minus_6 needs n >= 2");
  // Same-edge crossings are 1/(2n-1) apart; start halfway into the first gap.
  return trihex(0.5 / (2.0 * n - 1.0), trihex_drift_12n_minus_6_angle(n),
                expect(ClassKind::drift_periodic, 12 * n - 6), "x1 = 1/(2(2n-1))");
}

std::vector<std::string> construction_names() {
  return {"odd_lines_periodic",  "three_lines_periodic", "triangle_period6",
          "triangle_period10",   "right_triangle_bisecting_escape",
          "right_triangle_drift", "trihex_period6",      "trihex_period12",
          "trihex_period24",     "trihex_drift_6n",      "trihex_drift_12n_minus_6"};
}

ConstructionResult construct(const std::string& name, const ConstructionParams& params) {
  auto get = [&](const char* key, double fallback) {
    auto it = params.values.find(key);
    return it == params.values.end() ? fallback : it->second;
  };
  auto need = [&](const char* key) {
    auto it = params.values.find(key);
    if (it == params.values.end()) throw std::invalid_argument(std::string("missing parameter ") + key);
    return it->second;
  };
  auto integer = [&](const char* key) {
    const double v = need(key);
    if (v != std::floor(v)) throw std::invalid_argument(std::string(key) + " must be an integer");
    return static_cast<int>(v);
  };
  const double nan = std::nan("");
  if (name == "odd_lines_periodic") {
    if (!params.angles.empty()) return odd_lines_periodic(params.angles);
    const int n = integer("n");
    if (n < 1) throw InfeasibleConstruction("n must be positive");
    return odd_lines_periodic(std::vector<double>(static_cast<std::size_t>(n), kPi / n));
  }
  if (name == "three_lines_periodic") {
    const double a = need("alpha"), b = need("beta");
    return three_lines_periodic(a, b, get("gamma", kPi - a - b));
  }
  if (name == "triangle_period6") {
    return triangle_period6(TilingSpec::triangle(need("alpha"), need("beta")),
                            static_cast<std::int64_t>(get("i", 0)), static_cast<std::int64_t>(get("j", 0)));
  }
  if (name == "triangle_period10")
    return triangle_period10(need("alpha"), need("beta"), get("theta", nan), get("l", nan));
  if (name == "right_triangle_bisecting_escape")
    return right_triangle_bisecting_escape(need("alpha"), get("dir", kPi / 2.0));
  if (name == "right_triangle_drift") return right_triangle_drift(integer("n"));
  if (name == "trihex_period6") return trihex_period6(get("x1", 0.5));
  if (name == "trihex_period12") return trihex_period12(get("x1", 0.25));
  if (name == "trihex_period24") return trihex_period24(get("x1", 0.125), get("angle_offset", 0.0));
  if (name == "trihex_drift_6n") return trihex_drift_6n(integer("n"));
  if (name == "trihex_drift_12n_minus_6") return trihex_drift_12n_minus_6(integer("n"));
  throw std::invalid_argument("unknown construction: " + name);
}

}  // namespace tilebill
