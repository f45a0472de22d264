#include "tilebill/verify.hpp"

#include "tilebill/periodic_tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace tilebill {

namespace {

constexpr double kDeg = kPi / 180.0;
constexpr std::int64_t kClassifySteps = 100000;
constexpr std::int64_t kSweepSteps = 10000;
const double kSqrt3 = std::sqrt(3.0);

int pick(int configured, int fallback) { return configured > 0 ? configured : fallback; }
std::int64_t pick(std::int64_t configured, std::int64_t fallback) {
  return configured > 0 ? configured : fallback;
}

double fold_angle(double phi) { return std::min(phi, kPi - phi); }

struct Run {
  std::shared_ptr<const Tiling> tiling;
  Trajectory trace;
  Classification cls;
};

Json replay_json(const TilingSpec& spec, const TrajectoryState& start, std::int64_t max_steps) {
  return {{"tiling", to_json(spec)},
          {"start", {{"edge", to_json(start.edge)}, {"t", start.t}, {"dir", start.dir}}},
          {"max_steps", max_steps}};
}

Run run(const TilingSpec& spec, const TrajectoryState& start, std::int64_t max_steps,
        CaseOutcome& out) {
  Run r;
  r.tiling = make_tiling(spec);
  r.trace = trace(*r.tiling, start, max_steps);
  r.cls = classify_trajectory(*r.tiling, r.trace);
  out.replay = replay_json(spec, start, max_steps);
  out.observed = to_json(r.cls);
  return r;
}

Run run_construction(const ConstructionResult& c, std::int64_t max_steps, CaseOutcome& out) {
  out.expected = to_json(c.expected);
  Run r = run(c.spec, c.start, max_steps, out);
  if (!matches(c.expected, r.cls)) out.pass = false;
  out.residuals["return_residual"] = r.cls.residual;
  return r;
}

void fail(CaseOutcome& out, const std::string& why) {
  out.pass = false;
  if (!out.note.empty()) out.note += "; ";
  out.note += why;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool is_recurrent(ClassKind k) { return k == ClassKind::periodic || k == ClassKind::drift_periodic; }

using Suite = std::function<void(VerificationReport&, const VerifyConfig&, Rng&)>;

// ---------------------------------------------------------------- regular

void suite_regular(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng) {
  const int samples = pick(cfg.samples, 100);
  const std::int64_t steps = pick(cfg.max_steps, kSweepSteps);
  rep.grid = {{"tilings", {"equilateral_triangle", "square", "regular_hexagon", "kaleidoscope_30_60_90"}},
              {"starts_per_tiling", samples},
              {"max_steps", steps}};
  const std::vector<TilingSpec> specs{TilingSpec::equilateral(), TilingSpec::square(),
                                      TilingSpec::regular_hexagon(), TilingSpec::kaleidoscope()};
  for (const auto& spec : specs) {
    auto tiling = make_tiling(spec);
    std::map<std::string, int> tally;
    for (int k = 0; k < samples; ++k) {
      CaseOutcome out;
      out.label = std::string(to_string(spec.variant)) + " #" + std::to_string(k);
      const TrajectoryState start = random_edge_start(*tiling, rng);
      Run r = run(spec, start, steps, out);
      const auto& c = r.cls;
      bool allowed = false;
      switch (spec.variant) {
        case TilingVariant::equilateral_triangle:
          allowed = c.kind == ClassKind::periodic && c.period == 6;
          break;
        case TilingVariant::square:
          allowed = (c.kind == ClassKind::periodic && c.period == 4) ||
                    (c.kind == ClassKind::drift_periodic && c.period == 2);
          break;
        case TilingVariant::regular_hexagon:
          allowed = (c.kind == ClassKind::periodic && c.period == 6) ||
                    (c.kind == ClassKind::drift_periodic && c.period == 2);
          break;
        default:
          allowed = c.kind == ClassKind::periodic && (c.period == 4 || c.period == 6 || c.period == 12);
          break;
      }
      if (!allowed) fail(out, "classification outside the allowed set");
      const FoldPrediction fp = fold_oracle(*tiling, r.trace);
      out.residuals["fold_residual"] = fp.residual;
      out.residuals["fold_period"] = static_cast<double>(fp.period);
      if (fp.residual > 1e-9) fail(out, "folded crossings do not alternate");
      const bool fold_ok = fp.drift ? c.kind == ClassKind::drift_periodic && c.period == 2
                                    : c.kind == ClassKind::periodic && c.period == fp.period;
      if (!fold_ok) fail(out, "period differs from the folding prediction");
      tally[std::string(to_string(c.kind)) + "(" + std::to_string(c.period) + ")"]++;
      rep.cases.push_back(std::move(out));
    }
    rep.summary[to_string(spec.variant)] = tally;
  }
}

// ---------------------------------------------------------- line families

TilingSpec two_lines(double alpha) {
  return TilingSpec::line_arrangement({{0.0, Point2::Zero()}, {alpha, Point2::Zero()}});
}

void suite_two_lines(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng) {
  const int samples = pick(cfg.samples, 50);
  const std::int64_t steps = pick(cfg.max_steps, kSweepSteps);
  std::vector<double> alphas{90.0, 88.0};
  while (alphas.size() < 22) {
    // Below 60 degrees (or above 120) no start crosses both lines twice
    // outside the intersection point, so good starts do not exist.
    const double a = rng.uniform(62.0, 118.0);
    if (std::abs(a - 90.0) > 1.0) alphas.push_back(a);
  }
  rep.grid = {{"alpha_deg", alphas}, {"good_starts", samples}, {"max_steps", steps}};
  for (double deg : alphas) {
    const double alpha = deg * kDeg;
    const TilingSpec spec = two_lines(alpha);
    auto tiling = make_tiling(spec);
    const auto& arr = dynamic_cast<const LineArrangement&>(*tiling);
    const bool right = deg == 90.0;
    int periodic = 0, discarded = 0, most_returns = 0, alpha_side = 0;
    double worst_delta = 0.0, alpha_side_delta = std::nan("");
    for (int k = 0; k < samples; ++k) {
      CaseOutcome out;
      out.label = "alpha=" + fmt("%.6g", deg) + "deg #" + std::to_string(k);
      out.params = {{"alpha_deg", deg}};
      auto good = sample_good_start(arr, rng, steps);
      if (!good) {
        fail(out, "no good start found");
        rep.cases.push_back(std::move(out));
        continue;
      }
      discarded += good->discarded;
      const Run r{tiling, good->trace, classify_trajectory(arr, good->trace)};
      out.replay = replay_json(spec, good->start, steps);
      out.observed = to_json(r.cls);
      if (r.cls.kind == ClassKind::periodic) ++periodic;
      if (right) {
        out.expected = {{"kind", "periodic"}, {"period", 4}};
        if (!(r.cls.kind == ClassKind::periodic && r.cls.period == 4)) fail(out, "expected periodic(4)");
      } else {
        if (r.cls.kind == ClassKind::periodic) fail(out, "periodic orbit about non-perpendicular lines");
        // Angle at the k-th return to the first line is theta + k (4 alpha - 2 pi)
        // with alpha the angle of the sector crossed first.
        const Point2 o = arr.zone_center();
        const double first = angle_between(Vec2(r.trace.records[0].point - o), Vec2(r.trace.records[1].point - o));
        const double expected = 4.0 * first - 2.0 * kPi;
        const auto theta = crossing_angles(arr, r.trace);
        const std::size_t m = good_prefix(arr, r.trace);
        double worst = 0.0, measured = 0.0;
        int returns = 0;
        for (std::size_t j = 1; 4 * j <= m; ++j) {
          const double k = static_cast<double>(j);
          const double change = theta[4 * j] - theta[0];
          worst = std::max(worst, std::abs(change - k * expected) / (k * kDeg));
          measured = change / k;
          returns = static_cast<int>(j);
        }
        out.params["first_sector_deg"] = first / kDeg;
        const bool alpha_first = std::abs(first - alpha) < 1e-9;
        if (alpha_first && returns > 0) {
          ++alpha_side;
          alpha_side_delta = measured / kDeg;
        }
        out.expected = {{"per_return_delta_deg", expected / kDeg}};
        out.residuals["delta_error_deg_per_return"] = worst;
        out.residuals["returns"] = returns;
        if (returns > 0) out.residuals["per_return_delta_deg"] = measured / kDeg;
        most_returns = std::max(most_returns, returns);
        worst_delta = std::max(worst_delta, worst);
        if (worst > 1e-9) fail(out, "per-return angle change differs from 4 alpha - 2 pi");
      }
      rep.cases.push_back(std::move(out));
    }
    rep.summary[fmt("%.6g", deg)] = {{"periodic", periodic},
                                     {"good_starts", samples},
                                     {"discarded", discarded},
                                     {"most_returns", most_returns},
                                     {"alpha_sector_starts", alpha_side},
                                     {"alpha_sector_delta_deg", right ? Json(nullptr) : Json(alpha_side_delta)},
                                     {"worst_delta_error_deg", worst_delta}};
  }
}

void add_construction_case(VerificationReport& rep, const std::string& label, const Json& params,
                           const ConstructionResult& c, std::int64_t steps, double residual_tol) {
  CaseOutcome out;
  out.label = label;
  out.params = params;
  run_construction(c, steps, out);
  if (out.residuals["return_residual"].get<double>() >= residual_tol) fail(out, "return residual too large");
  if (!out.pass && out.note.empty()) out.note = "classification differs from the construction";
  rep.cases.push_back(std::move(out));
}

void suite_three_lines(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng) {
  const int samples = pick(cfg.samples, 10);
  const std::int64_t steps = pick(cfg.max_steps, kClassifySteps);
  rep.grid = {{"concurrent", samples}, {"simple", samples}, {"max_steps", steps}};
  for (int k = 0; k < samples; ++k) {
    double a, b;
    do {
      a = rng.uniform(0.1, kPi - 0.2);
      b = rng.uniform(0.1, kPi - 0.2);
    } while (kPi - a - b < 0.1);
    add_construction_case(rep, "concurrent #" + std::to_string(k), {{"alpha", a}, {"beta", b}, {"gamma", kPi - a - b}},
                          three_lines_periodic(a, b, kPi - a - b), steps, 1e-7);
  }
  for (int k = 0; k < samples; ++k) {
    const TilingSpec spec = random_arrangement(3, rng);
    add_construction_case(rep, "simple #" + std::to_string(k), to_json(spec), odd_lines_periodic(spec), steps, 1e-7);
  }
}

void suite_odd_lines(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng) {
  const int samples = pick(cfg.samples, 10);
  const std::int64_t steps = pick(cfg.max_steps, kClassifySteps);
  rep.grid = {{"n", {3, 5, 7}}, {"arrangements_per_n", samples}, {"max_steps", steps}};
  for (std::size_t n : {3u, 5u, 7u}) {
    for (int k = 0; k < samples; ++k) {
      const TilingSpec spec = random_arrangement(n, rng);
      add_construction_case(rep, "n=" + std::to_string(n) + " #" + std::to_string(k), to_json(spec),
                            odd_lines_periodic(spec), steps, 1e-7);
    }
  }
  // Equal angles reduce the construction angle to (n - 1) pi / (2n).
  for (int n : {3, 5, 7, 9}) {
    const std::vector<double> alphas(static_cast<std::size_t>(n), kPi / n);
    CaseOutcome out;
    out.label = "equal angles n=" + std::to_string(n);
    out.residuals["angle_error"] = std::abs(odd_periodic_angle(alphas) - (n - 1) * kPi / (2.0 * n));
    if (out.residuals["angle_error"].get<double>() > 1e-12) fail(out, "equal-angle construction angle");
    rep.cases.push_back(std::move(out));
  }
}

std::vector<double> split(double total, std::size_t parts, Rng& rng) {
  std::vector<double> w(parts);
  for (double& x : w) x = rng.uniform(0.3, 1.0);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x *= total / s;
  return w;
}

TilingSpec arrangement_from_alphas(const std::vector<double>& alphas, Rng& rng) {
  const double base = rng.uniform(0.0, kPi);
  std::vector<LineSpec> lines;
  double angle = base;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    lines.push_back({angle, Point2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))});
    angle += alphas[k];
  }
  return TilingSpec::line_arrangement(std::move(lines));
}

void suite_even_lines(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng) {
  const int arrangements = 10;
  const int samples = pick(cfg.samples, 50);
  const std::int64_t steps = pick(cfg.max_steps, kSweepSteps);
  rep.grid = {{"n", {2, 4, 6}}, {"arrangements_each", arrangements}, {"good_starts", samples}, {"max_steps", steps}};
  int total_discarded = 0;
  for (int satisfied = 1; satisfied >= 0; --satisfied) {
    for (int a = 0; a < arrangements; ++a) {
      const std::size_t n = 2 * static_cast<std::size_t>(1 + a % 3);
      std::shared_ptr<const Tiling> tiling;
      TilingSpec spec;
      std::vector<double> alphas;
      for (;;) {
        if (satisfied) {
          const auto even = split(kPi / 2, n / 2, rng), odd = split(kPi / 2, n / 2, rng);
          alphas.clear();
          for (std::size_t k = 0; k < n / 2; ++k) {
            alphas.push_back(even[k]);
            alphas.push_back(odd[k]);
          }
        } else {
          alphas = split(kPi, n, rng);
          if (even_lines_condition(alphas, 0.05)) continue;
        }
        spec = arrangement_from_alphas(alphas, rng);
        try {
          tiling = make_tiling(spec);
        } catch (const InvalidSpec&) {
          continue;
        }
        // Wide angles can rule out good starts altogether.
        Rng probe(rng.below(~0ULL));
        if (!sample_good_start(dynamic_cast<const LineArrangement&>(*tiling), probe, 4 * n + 1, 2000)) continue;
        break;
      }
      const auto& arr = dynamic_cast<const LineArrangement&>(*tiling);
      const std::string name = std::string(satisfied ? "satisfied" : "violated") + " n=" + std::to_string(n) + " #" +
                               std::to_string(a);
      // T^2 for the lines in cyclic order.
      std::vector<Line> seq(arr.lines().begin(), arr.lines().end());
      seq.insert(seq.end(), arr.lines().begin(), arr.lines().end());
      const Isometry t2 = compose_reflections<double>(seq);
      {
        CaseOutcome out;
        out.label = name + " T^2";
        out.params = to_json(spec);
        out.observed = {{"isometry", to_string(t2.kind)}, {"angle", t2.angle}};
        out.residuals["condition"] = std::abs(std::accumulate(alphas.begin(), alphas.end(), 0.0, [k = 0](double s, double x) mutable {
          return s + (k++ % 2 == 0 ? x : -x);
        }));
        if (satisfied && t2.kind != IsometryKind::identity) fail(out, "T^2 should be the identity");
        if (!satisfied && t2.kind != IsometryKind::rotation) fail(out, "T^2 should be a nontrivial rotation");
        rep.cases.push_back(std::move(out));
      }
      int periodic = 0;
      for (int k = 0; k < samples; ++k) {
        CaseOutcome out;
        out.label = name + " start #" + std::to_string(k);
        auto good = sample_good_start(arr, rng, steps);
        if (!good) {
          fail(out, "no good start found");
          rep.cases.push_back(std::move(out));
          continue;
        }
        total_discarded += good->discarded;
        const Classification c = classify_trajectory(arr, good->trace);
        out.replay = replay_json(spec, good->start, steps);
        out.observed = to_json(c);
        if (c.kind == ClassKind::periodic) ++periodic;
        if (satisfied) {
          out.expected = {{"kind", "periodic"}, {"period", 2 * n}};
          if (!(c.kind == ClassKind::periodic && c.period == static_cast<std::int64_t>(2 * n)))
            fail(out, "good start is not periodic(2n)");
        } else if (c.kind == ClassKind::periodic) {
          fail(out, "periodic good start although the condition fails");
        }
        rep.cases.push_back(std::move(out));
      }
      rep.summary[name] = {{"periodic", periodic}, {"good_starts", samples}};
    }
  }
  rep.summary["discarded_samples"] = total_discarded;
}

void suite_spiral(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng) {
  const std::int64_t steps = pick(cfg.max_steps, kSweepSteps);
  const std::vector<double> eps{1e-3, -1e-3, 1e-5, -1e-5};
  // Concurrent lines are left out: there every good start is periodic.
  std::vector<TilingSpec> specs;
  const int count = pick(cfg.samples, 3);
  for (int k = 0; k < count; ++k) specs.push_back(random_arrangement(3, rng));
  rep.grid = {{"epsilon", eps}, {"arrangements", specs.size()}, {"max_steps", steps}};
  for (std::size_t s = 0; s < specs.size(); ++s) {
    auto tiling = make_tiling(specs[s]);
    const auto& arr = dynamic_cast<const LineArrangement&>(*tiling);
    const double theta = odd_periodic_angle(arr.alphas());
    const double radius = 10.0 * (arr.zone_radius() + 1.0);
    for (double e : eps) {
      CaseOutcome out;
      out.label = "arrangement #" + std::to_string(s) + " eps=" + fmt("%g", e);
      out.params = {{"tiling", to_json(specs[s])}, {"epsilon", e}};
      const TrajectoryState start = arrangement_start(arr, theta + e, radius);
      Run r = run(specs[s], start, steps, out);
      out.expected = {{"kind", "spiraling"}, {"delta", -2.0 * e}};
      const auto& w = r.cls.spiral;
      if (!w) {
        fail(out, "no spiral witness");
      } else {
        out.residuals["delta_error"] = std::abs(w->delta + 2.0 * e);
        out.residuals["cycles"] = w->cycles;
        if (std::abs(w->delta + 2.0 * e) > 1e-9) fail(out, "theta_3 - theta_0 differs from -2 eps");
        if (w->cycles < 5) fail(out, "fewer than 5 cycles");
        if (!w->alternating) fail(out, "block changes do not alternate");
      }
      if (r.cls.kind == ClassKind::periodic) fail(out, "perturbed start is still periodic");
      rep.cases.push_back(std::move(out));
    }
  }
}

// -------------------------------------------------------------- triangles

struct IsoBound {
  double theta = 0.0;
  std::int64_t n = -1;
  std::int64_t bound = 0;
  bool applies = false;
};

IsoBound iso_bound(const Tiling& tiling, const Trajectory& tr, std::int64_t period, bool drift, double alpha) {
  const auto names = tiling.edge_slot_names();
  IsoBound b;
  b.theta = kPi;
  for (std::int64_t k = 0; k < period; ++k) {
    const auto& s = tr.state(static_cast<std::size_t>(k));
    if (names.at(s.edge.slot) == "base") continue;
    b.theta = std::min(b.theta, fold_angle(edge_angle(tiling, s)));
  }
  if (!(b.theta < alpha)) return b;
  b.applies = true;
  b.n = static_cast<std::int64_t>(std::ceil((kPi - alpha - b.theta) / alpha - 1e-12));
  while (b.theta + b.n * alpha < kPi - alpha - 1e-12) ++b.n;
  while (b.n > 0 && b.theta + b.n * alpha >= kPi - 1e-12) --b.n;
  const bool even = b.n % 2 == 0;
  b.bound = (even == drift) ? 2 * b.n + 4 : 2 * b.n + 2;
  return b;
}

void suite_iso(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng, bool bounds) {
  const int samples = pick(cfg.samples, 100);
  const std::int64_t steps = pick(cfg.max_steps, kSweepSteps);
  const std::vector<double> angles{kPi / 5, kPi / 7, 0.4};
  rep.grid = {{"vertex_angles", angles}, {"starts_per_angle", samples}, {"max_steps", steps}};
  for (double alpha : angles) {
    const TilingSpec spec = TilingSpec::isosceles(alpha);
    auto tiling = make_tiling(spec);
    int recurrent = 0, outside = 0;
    std::int64_t longest = 0;
    for (int k = 0; k < samples; ++k) {
      CaseOutcome out;
      out.label = "alpha=" + fmt("%.6f", alpha) + " #" + std::to_string(k);
      out.params = {{"alpha", alpha}};
      Run r = run(spec, random_edge_start(*tiling, rng), steps, out);
      if (!is_recurrent(r.cls.kind)) {
        fail(out, "neither periodic nor drift-periodic");
      } else {
        ++recurrent;
        longest = std::max(longest, r.cls.period);
      }
      if (bounds && is_recurrent(r.cls.kind)) {
        const IsoBound b = iso_bound(*tiling, r.trace, r.cls.period, r.cls.kind == ClassKind::drift_periodic, alpha);
        out.residuals["theta"] = b.theta;
        if (b.applies) {
          out.residuals["n"] = b.n;
          out.residuals["bound"] = b.bound;
          out.residuals["overshoot"] = static_cast<double>(std::max<std::int64_t>(0, r.cls.period - b.bound));
          if (r.cls.period > b.bound) fail(out, "period exceeds the bound");
        } else {
          ++outside;
          out.note = "smallest leg angle is not below the vertex angle";
        }
      }
      rep.cases.push_back(std::move(out));
    }
    Json s = {{"recurrent", recurrent}, {"starts", samples}, {"longest_period", longest}};
    if (bounds) s["outside_hypothesis"] = outside;
    rep.summary[fmt("%.6f", alpha)] = s;
  }
}

void suite_bisect(VerificationReport& rep, const VerifyConfig& cfg, Rng&) {
  const std::int64_t steps = pick(cfg.max_steps, kSweepSteps);
  const std::vector<double> alphas{kPi / 8, 0.3, 1.0};
  rep.grid = {{"alpha", alphas}, {"max_steps", steps}};
  for (double alpha : alphas) {
    CaseOutcome out;
    out.label = "alpha=" + fmt("%.6f", alpha);
    out.params = {{"alpha", alpha}};
    const auto c = right_triangle_bisecting_escape(alpha);
    Run r = run_construction(c, steps, out);
    if (!out.pass) out.note = "classification differs from the construction";
    const bool cert = escape_certificate_right_triangle(*r.tiling, r.trace);
    const auto names = r.tiling->edge_slot_names();
    double worst = 0.0;
    std::int64_t hyp = 0;
    for (const auto& rec : r.trace.records) {
      if (names.at(rec.state.edge.slot) != "hypotenuse") continue;
      ++hyp;
      worst = std::max(worst, std::abs(rec.state.t - 0.5));
    }
    out.residuals["certificate"] = cert ? 1.0 : 0.0;
    out.residuals["records"] = static_cast<double>(r.trace.size());
    out.residuals["hypotenuse_crossings"] = static_cast<double>(hyp);
    out.residuals["midpoint_error"] = worst;
    if (!cert) fail(out, "escape certificate false");
    if (worst > 1e-9) fail(out, "hypotenuse crossing away from the midpoint");
    if (static_cast<std::int64_t>(r.trace.size()) < steps) fail(out, "trace ended early");
    rep.cases.push_back(std::move(out));
  }
}

double drift_constancy(const Trajectory& tr, std::int64_t period, const Vec2& drift,
                       std::size_t window = std::numeric_limits<std::size_t>::max()) {
  double worst = 0.0;
  for (std::size_t k = 0; k + static_cast<std::size_t>(period) < std::min(tr.size(), window); ++k)
    worst = std::max(worst, (tr.records[k + period].point - tr.records[k].point - drift).norm());
  return worst;
}

void suite_right_drift(VerificationReport& rep, const VerifyConfig& cfg, Rng&) {
  const std::int64_t steps = pick(cfg.max_steps, kClassifySteps);
  const std::vector<int> ns{2, 3, 4, 5, 6};
  rep.grid = {{"n", ns}, {"max_steps", steps}};
  for (int n : ns) {
    CaseOutcome out;
    out.label = "n=" + std::to_string(n);
    out.params = {{"n", n}};
    Run r = run_construction(right_triangle_drift(n), steps, out);
    if (!out.pass) out.note = "classification differs from the construction";
    if (r.cls.kind == ClassKind::drift_periodic) {
      const double dc = drift_constancy(r.trace, r.cls.period, r.cls.drift);
      out.residuals["drift_constancy"] = dc;
      if (dc >= 1e-9) fail(out, "drift vector not constant");
    }
    rep.cases.push_back(std::move(out));
  }
}

void suite_period10(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng) {
  const int samples = pick(cfg.samples, 20);
  const std::int64_t steps = pick(cfg.max_steps, kClassifySteps);
  rep.grid = {{"pinned", {{"alpha", kPi / 5}, {"beta", 3 * kPi / 10}, {"theta", 3 * kPi / 10}, {"l", 0.19}}},
              {"region_samples", samples},
              {"scalene_samples", samples},
              {"max_steps", steps}};
  add_construction_case(rep, "pinned", rep.grid["pinned"], triangle_period10(kPi / 5, 3 * kPi / 10, 3 * kPi / 10, 0.19),
                        steps, 1e-7);
  for (int k = 0; k < samples; ++k) {
    double a, b;
    do {
      a = rng.uniform(0.02, kPi / 3);
      b = rng.uniform(a, kPi - 2 * a);
    } while (!period10_region(a, b) || b - a < 0.01 || kPi - 2 * a - b < 0.01 || kPi / 3 - a < 0.01);
    add_construction_case(rep, "region #" + std::to_string(k), {{"alpha", a}, {"beta", b}}, triangle_period10(a, b),
                          steps, 1e-7);
  }
  for (int k = 0; k < samples; ++k) {
    double a, b;
    do {
      a = rng.uniform(0.05, kPi - 0.1);
      b = rng.uniform(0.05, kPi - a - 0.05);
    } while (std::min({std::abs(a - b), std::abs(kPi - 2 * a - b), std::abs(kPi - a - 2 * b)}) < 0.02);
    const TilingSpec spec = TilingSpec::triangle(a, b);
    add_construction_case(rep, "scalene #" + std::to_string(k), to_json(spec), triangle_period10(spec), steps, 1e-7);
  }
  for (double v : {0.3, 0.5, 0.9}) {
    const TilingSpec spec = TilingSpec::isosceles(v);
    add_construction_case(rep, "isosceles vertex " + fmt("%.3f", v), to_json(spec), triangle_period10(spec), steps, 1e-7);
  }
  std::vector<TilingSpec> infeasible{TilingSpec::equilateral()};
  for (double v : {kPi / 3, 1.2, 1.5, 2.0, 2.5}) infeasible.push_back(TilingSpec::isosceles(v));
  for (const auto& spec : infeasible) {
    CaseOutcome out;
    out.label = "infeasible " + std::string(to_string(spec.variant)) + " " + fmt("%.6f", spec.alpha);
    out.params = to_json(spec);
    out.expected = {{"error", "InfeasibleConstruction"}};
    try {
      (void)triangle_period10(spec);
      out.observed = {{"error", nullptr}};
      fail(out, "construction accepted");
    } catch (const InfeasibleConstruction& e) {
      out.observed = {{"error", "InfeasibleConstruction"}, {"message", e.what()}};
    }
    rep.cases.push_back(std::move(out));
  }
}

// ------------------------------------------------------------ trihexagonal

struct Hexagon {
  Point2 v[6];  // A..F counter-clockwise
};

Hexagon unit_hexagon() {
  Hexagon h;
  for (int k = 0; k < 6; ++k) h.v[k] = direction_vector(k * kPi / 3.0);
  return h;
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Vec2 d = b - a;
  const double s = (p - a).dot(d) / d.squaredNorm();
  return s > 0.0 && s < 1.0 && std::abs(cross2(d, Vec2(p - a))) / d.norm() < 1e-9;
}

enum class Lemma { turner, quadrilateral, quad_triangle, pentagon };

void suite_lemma(VerificationReport& rep, const VerifyConfig& cfg, Rng& rng, Lemma lemma) {
  const int samples = pick(cfg.samples, 1000);
  const auto tiling = make_tiling(TilingSpec::trihexagonal());
  const Hexagon hex = unit_hexagon();
  const Point2 &A = hex.v[0], &B = hex.v[1], &C = hex.v[2], &D = hex.v[3], &E = hex.v[4];
  int accepted = 0, rejected = 0;
  double worst_x = 0.0, worst_a = 0.0;
  rep.grid = {{"valid_samples", samples}, {"x1", "uniform (0, 1)"}, {"alpha", "uniform (0, pi)"}};
  while (accepted < samples) {
    if (rejected > 200 * samples) break;
    const double x1 = rng.uniform(0.001, 0.999);
    const double alpha = rng.uniform(0.001, kPi - 0.001);
    CaseOutcome out;
    out.params = {{"x1", x1}, {"alpha", alpha}};
    TrajectoryState start;
    std::size_t need;
    try {
      if (lemma == Lemma::turner) {
        start = trihex_start(*tiling, x1, alpha);
        need = 4;
      } else {
        // p1 on AB at distance x1 from B; the angle towards A is alpha.
        const Vec2 u = (A - B).normalized();
        const Point2 p1 = B + x1 * u;
        const Vec2 d(std::cos(-alpha) * u.x() - std::sin(-alpha) * u.y(),
                     std::sin(-alpha) * u.x() + std::cos(-alpha) * u.y());
        start = tiling->state_from_point(p1, angle_of(d)).state;
        need = lemma == Lemma::quad_triangle ? 3 : 2;
      }
    } catch (const TilingError&) {
      ++rejected;
      continue;
    }
    const Trajectory tr = trace(*tiling, start, static_cast<std::int64_t>(need));
    if (tr.size() < need) {
      ++rejected;
      continue;
    }
    const auto p = [&](std::size_t i) { return tr.records[i - 1].point; };
    const auto dir = [&](std::size_t i) { return direction_vector(tr.state(i - 1).dir); };
    double x_sim = 0, x_form = 0, a_sim = 0, a_form = 0;
    bool valid = false;
    switch (lemma) {
      case Lemma::turner: {
        // All four crossings on edges through the corner W cut off first.
        const auto w = shared_vertex(*tiling, tr.state(0).edge, tr.state(1).edge);
        if (!w) break;
        valid = true;
        for (std::size_t i = 1; i <= 4 && valid; ++i) {
          const Piece pc = tiling->edge_piece(tr.state(i - 1).edge);
          valid = (pc.at(pc.lo) - *w).norm() < 1e-9 || (pc.at(pc.hi) - *w).norm() < 1e-9;
        }
        valid = valid && tr.state(1).tile.slot == 0 && tr.state(2).tile.slot != 0 &&
                tr.state(0).tile != tr.state(2).tile;
        if (!valid) break;
        const double x1s = (p(1) - *w).norm(), a1s = angle_between(dir(1), Vec2(*w - p(1)));
        x_sim = (p(4) - *w).norm();
        x_form = x1s;
        a_sim = angle_between(dir(4), Vec2(*w - p(4)));
        a_form = kPi - a1s;
        break;
      }
      case Lemma::quadrilateral:
      case Lemma::quad_triangle:
        if (!on_segment(p(2), C, D)) break;
        if (lemma == Lemma::quadrilateral) {
          valid = true;
          x_sim = (p(2) - C).norm();
          x_form = (std::sin(alpha) * (2 * x1 + 1) + kSqrt3 * std::cos(alpha)) / (2 * std::sin(alpha - kPi / 3));
          a_sim = angle_between(dir(2), Vec2(C - p(2)));
          a_form = alpha - kPi / 3;
        } else {
          // T is the apex of the triangle on CD.
          const Point2 T = C + (D - C).norm() * direction_vector(angle_of(Vec2(D - C)) - kPi / 3);
          if (!on_segment(p(3), C, T)) break;
          valid = true;
          x_sim = (p(3) - C).norm();
          x_form = 0.5 + x1 + 0.5 * kSqrt3 / std::tan(alpha);
          a_sim = angle_between(dir(3), Vec2(C - p(3)));
          a_form = kPi - alpha;
        }
        break;
      case Lemma::pentagon:
        if (!on_segment(p(2), D, E)) break;
        valid = true;
        x_sim = (p(2) - D).norm();
        x_form = x1 + kSqrt3 / std::tan(alpha);
        a_sim = angle_between(dir(2), Vec2(D - p(2)));
        a_form = alpha;
        break;
    }
    if (!valid) {
      ++rejected;
      continue;
    }
    ++accepted;
    out.label = "sample #" + std::to_string(accepted);
    out.replay = replay_json(TilingSpec::trihexagonal(), start, static_cast<std::int64_t>(need));
    out.residuals["x_error"] = std::abs(x_sim - x_form);
    out.residuals["alpha_error"] = std::abs(a_sim - a_form);
    worst_x = std::max(worst_x, std::abs(x_sim - x_form));
    worst_a = std::max(worst_a, std::abs(a_sim - a_form));
    if (std::abs(x_sim - x_form) > 1e-9) fail(out, "length differs from the closed form");
    if (std::abs(a_sim - a_form) > 1e-9) fail(out, "angle differs from the closed form");
    rep.cases.push_back(std::move(out));
  }
  rep.summary = {{"accepted", accepted}, {"rejected", rejected}, {"worst_x_error", worst_x}, {"worst_alpha_error", worst_a}};
  if (accepted < samples) {
    CaseOutcome out;
    out.label = "sampling";
    fail(out, "too few configurations with the crossing pattern");
    rep.cases.push_back(std::move(out));
  }
}

void check_edge_angles(CaseOutcome& out, const Tiling& tiling, const Trajectory& tr, std::int64_t count,
                       const std::vector<double>& allowed) {
  double worst = 0.0;
  for (std::int64_t k = 0; k < count && k < static_cast<std::int64_t>(tr.size()); ++k) {
    const double a = fold_angle(edge_angle(tiling, tr.state(static_cast<std::size_t>(k))));
    double best = kPi;
    for (double v : allowed) best = std::min(best, std::abs(a - v));
    worst = std::max(worst, best);
  }
  out.residuals["edge_angle_error"] = worst;
  if (worst > 1e-9) fail(out, "crossing angle outside the expected set");
}

void suite_trihex_periodic(VerificationReport& rep, const VerifyConfig& cfg, int which) {
  const std::int64_t steps = pick(cfg.max_steps, kClassifySteps);
  if (which == 6) {
    const std::vector<double> xs{0.5, 0.1, 0.9};
    rep.grid = {{"x1", xs}, {"max_steps", steps}};
    for (double x : xs) {
      CaseOutcome out;
      out.label = "x1=" + fmt("%g", x);
      Run r = run_construction(trihex_period6(x), steps, out);
      check_edge_angles(out, *r.tiling, r.trace, 6, {kPi / 3});
      rep.cases.push_back(std::move(out));
    }
  } else if (which == 12) {
    const std::vector<double> xs{0.25, 0.1, 0.4};
    rep.grid = {{"x1", xs}, {"max_steps", steps}};
    for (double x : xs) {
      CaseOutcome out;
      out.label = "x1=" + fmt("%g", x);
      Run r = run_construction(trihex_period12(x), steps, out);
      check_edge_angles(out, *r.tiling, r.trace, 12, {kPi / 2, kPi / 6});
      rep.cases.push_back(std::move(out));
    }
  } else {
    const std::int64_t sweep = pick(cfg.max_steps, kSweepSteps);
    rep.grid = {{"variants", {"canonical", "reversed", "perturbed +1e-3", "perturbed -1e-3"}}, {"max_steps", steps}};
    const auto c = trihex_period24();
    {
      CaseOutcome out;
      out.label = "canonical";
      Run r = run_construction(c, steps, out);
      const auto local = trihex_local(*r.tiling, r.trace);
      if (local[0] && local[24]) {
        out.residuals["x25_minus_x1"] = std::abs(local[24]->x - local[0]->x);
        if (std::abs(local[24]->x - local[0]->x) > 1e-9) fail(out, "x_25 differs from x_1");
      } else {
        fail(out, "local coordinates unavailable");
      }
      out.residuals["alpha_error"] = std::abs(edge_angle(*r.tiling, c.start) - (kPi - std::atan(2 * kSqrt3)));
      rep.cases.push_back(std::move(out));
    }
    {
      CaseOutcome out;
      out.label = "reversed";
      auto tiling = make_tiling(c.spec);
      ConstructionResult rev = c;
      rev.start = tiling->canonicalize_state(c.start.edge, c.start.t, c.start.dir + kPi).state;
      run_construction(rev, steps, out);
      rep.cases.push_back(std::move(out));
    }
    for (double e : {1e-3, -1e-3}) {
      CaseOutcome out;
      out.label = "perturbed " + fmt("%+g", e);
      auto tiling = make_tiling(c.spec);
      const TrajectoryState s = tiling->canonicalize_state(c.start.edge, c.start.t, c.start.dir + e).state;
      out.expected = {{"not", "periodic(24)"}};
      Run r = run(c.spec, s, sweep, out);
      if (r.cls.kind == ClassKind::periodic && r.cls.period == 24) fail(out, "perturbed start still periodic(24)");
      rep.cases.push_back(std::move(out));
    }
  }
}

void suite_trihex_drift(VerificationReport& rep, const VerifyConfig& cfg, bool turning) {
  const std::int64_t steps = pick(cfg.max_steps, kClassifySteps);
  const std::vector<int> ns = turning ? std::vector<int>{2, 3, 4} : std::vector<int>{1, 2, 4};
  rep.grid = {{"n", ns}, {"max_steps", steps}};
  for (int n : ns) {
    CaseOutcome out;
    out.label = "n=" + std::to_string(n);
    out.params = {{"n", n}};
    const auto c = turning ? trihex_drift_12n_minus_6(n) : trihex_drift_6n(n);
    Run r = run_construction(c, steps, out);
    if (!out.pass) out.note = "classification differs from the construction";
    if (r.cls.kind == ClassKind::drift_periodic) {
      // Over the whole trace rounding in the direction builds up to ~1e-9.
      const auto window = static_cast<std::size_t>(100 * r.cls.period);
      const double dc = drift_constancy(r.trace, r.cls.period, r.cls.drift, window);
      out.residuals["drift_constancy"] = dc;
      out.residuals["drift_constancy_full_trace"] = drift_constancy(r.trace, r.cls.period, r.cls.drift);
      if (dc >= 1e-9) fail(out, "drift vector not constant");
    }
    if (turning) {
      const auto gaps = drift_spacings(*r.tiling, r.trace, n);
      double worst = 0.0;
      for (double g : gaps) worst = std::max(worst, std::abs(g - 1.0 / (2 * n - 1)));
      out.residuals["spacing_error"] = worst;
      out.residuals["spacing_pairs"] = static_cast<double>(gaps.size());
      if (worst > 1e-9) fail(out, "same-edge spacing differs from 1/(2n-1)");
    }
    rep.cases.push_back(std::move(out));
  }
  // Initial angles increase with n towards their limit.
  CaseOutcome out;
  out.label = "initial angles";
  const double limit = turning ? kPi / 2 : 2 * kPi / 3;
  double prev = 0.0;
  bool monotone = true;
  Json seq = Json::array();
  for (int n = turning ? 2 : 1; n <= 40; ++n) {
    const double a = turning ? trihex_drift_12n_minus_6_angle(n) : trihex_drift_6n_angle(n);
    if (a <= prev) monotone = false;
    prev = a;
    if (n <= 8) seq.push_back(a);
  }
  out.observed = {{"angles", seq}};
  out.residuals["limit_gap_n40"] = limit - prev;
  if (!monotone) fail(out, "angles not increasing");
  if (!(limit - prev > 0.0 && limit - prev < 0.05)) fail(out, "angles do not approach the limit");
  if (!turning) {
    out.residuals["n1_error"] = std::abs(trihex_drift_6n_angle(1) - (kPi - std::atan(3 * kSqrt3)));
    if (out.residuals["n1_error"].get<double>() > 1e-12) fail(out, "n=1 angle");
  }
  rep.cases.push_back(std::move(out));
}

void suite_dense(VerificationReport& rep, const VerifyConfig& cfg) {
  const std::vector<int> ns{2, 3, 4, 5, 6, 7, 8};
  rep.grid = {{"n", ns}};
  (void)cfg;
  double prev = 1.0;
  for (int n : ns) {
    CaseOutcome out;
    out.label = "n=" + std::to_string(n);
    out.params = {{"n", n}};
    const auto c = trihex_drift_12n_minus_6(n);
    const std::int64_t period = 12 * n - 6;
    Run r = run(c.spec, c.start, period + 1, out);
    const auto gaps = drift_spacings(*r.tiling, r.trace, n);
    double worst = 0.0, largest = 0.0;
    for (double g : gaps) {
      worst = std::max(worst, std::abs(g - 1.0 / (2 * n - 1)));
      largest = std::max(largest, g);
    }
    out.expected = {{"spacing", 1.0 / (2 * n - 1)}};
    out.residuals["spacing_error"] = worst;
    out.residuals["spacing"] = largest;
    out.residuals["spacing_pairs"] = static_cast<double>(gaps.size());
    if (gaps.empty()) fail(out, "no same-edge pairs");
    if (worst > 1e-9) fail(out, "same-edge spacing differs from 1/(2n-1)");
    if (!(largest < prev)) fail(out, "spacing does not shrink");
    prev = largest;
    rep.cases.push_back(std::move(out));
  }
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> table{
      {"mf_regular_tilings", suite_regular},
      {"ek_two_lines", suite_two_lines},
      {"ek_three_lines", suite_three_lines},
      {"odd_lines_2n", suite_odd_lines},
      {"even_lines_condition", suite_even_lines},
      {"spiral_odd_perturbation", suite_spiral},
      {"iso_classification", [](auto& r, const auto& c, auto& g) { suite_iso(r, c, g, false); }},
      {"iso_period_bounds", [](auto& r, const auto& c, auto& g) { suite_iso(r, c, g, true); }},
      {"right_bisect_escape", suite_bisect},
      {"right_drift_pi_over_2n", suite_right_drift},
      {"triangle_period10_region", suite_period10},
      {"trihex_lemma_turner", [](auto& r, const auto& c, auto& g) { suite_lemma(r, c, g, Lemma::turner); }},
      {"trihex_lemma_quadrilateral", [](auto& r, const auto& c, auto& g) { suite_lemma(r, c, g, Lemma::quadrilateral); }},
      {"trihex_lemma_quad_triangle", [](auto& r, const auto& c, auto& g) { suite_lemma(r, c, g, Lemma::quad_triangle); }},
      {"trihex_lemma_pentagon", [](auto& r, const auto& c, auto& g) { suite_lemma(r, c, g, Lemma::pentagon); }},
      {"trihex_period6", [](auto& r, const auto& c, auto&) { suite_trihex_periodic(r, c, 6); }},
      {"trihex_period12", [](auto& r, const auto& c, auto&) { suite_trihex_periodic(r, c, 12); }},
      {"trihex_period24", [](auto& r, const auto& c, auto&) { suite_trihex_periodic(r, c, 24); }},
      {"trihex_drift_6n", [](auto& r, const auto& c, auto&) { suite_trihex_drift(r, c, false); }},
      {"trihex_drift_12n_minus_6", [](auto& r, const auto& c, auto&) { suite_trihex_drift(r, c, true); }},
      {"dense_spacing", [](auto& r, const auto& c, auto&) { suite_dense(r, c); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, _] : suites()) v.push_back(id);
    return v;
  }();
  return ids;
}

VerificationReport verify_theorem(const std::string& id, const VerifyConfig& config) {
  const auto& table = suites();
  const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == id; });
  if (it == table.end()) throw std::invalid_argument("unknown theorem id " + id);
  VerificationReport rep;
  rep.theorem = id;
  rep.seed = config.seed;
  Rng rng(config.seed);
  it->second(rep, config, rng);
  rep.pass = !rep.cases.empty() &&
             std::all_of(rep.cases.begin(), rep.cases.end(), [](const CaseOutcome& c) { return c.pass; });
  return rep;
}

Json to_json(const VerificationReport& r) {
  Json cases = Json::array();
  std::int64_t failed = 0;
  for (const auto& c : r.cases) {
    if (!c.pass) ++failed;
    Json j = {{"label", c.label}, {"pass", c.pass}};
    if (!c.params.empty()) j["params"] = c.params;
    if (!c.expected.is_null()) j["expected"] = c.expected;
    if (!c.observed.is_null()) j["observed"] = c.observed;
    if (!c.residuals.empty()) j["residuals"] = c.residuals;
    if (!c.replay.is_null()) j["replay"] = c.replay;
    if (!c.note.empty()) j["note"] = c.note;
    cases.push_back(std::move(j));
  }
  return {{"v", 1},
          {"theorem", r.theorem},
          {"seed", r.seed},
          {"pass", r.pass},
          {"cases_total", r.cases.size()},
          {"cases_failed", failed},
          {"grid", r.grid},
          {"summary", r.summary},
          {"cases", std::move(cases)}};
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  const auto failed = std::count_if(r.cases.begin(), r.cases.end(), [](const CaseOutcome& c) { return !c.pass; });
  os << r.theorem << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.cases.size() - failed << "/" << r.cases.size()
     << " cases, seed " << r.seed << ")\n";
  os << "  grid: " << r.grid.dump() << "\n";
  if (!r.summary.empty()) os << "  summary: " << r.summary.dump() << "\n";
  for (const auto& c : r.cases) {
    os << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.label;
    if (c.observed.is_object() && c.observed.contains("kind")) {
      os << "  " << c.observed["kind"].get<std::string>();
      if (c.observed.value("period", 0) > 0) os << "(" << c.observed["period"].get<std::int64_t>() << ")";
    }
    for (const auto& [k, v] : c.residuals.items())
      if (v.is_number()) os << "  " << k << "=" << fmt("%.3g", v.get<double>());
    if (!c.note.empty()) os << "  [" << c.note << "]";
    os << "\n";
  }
  return os.str();
}

TrajectoryState random_edge_start(const Tiling& tiling, Rng& rng) {
  const auto slots = static_cast<std::uint64_t>(std::max<std::size_t>(1, tiling.edge_slot_names().size()));
  for (;;) {
    const EdgeRef e{0, 0, static_cast<int>(rng.below(slots))};
    const double t = rng.uniform(0.02, 0.98);
    const double psi = rng.uniform(0.05, kPi - 0.05);
    const double side = rng.below(2) == 0 ? 0.0 : kPi;
    const Piece pc = tiling.edge_piece(e);
    try {
      return tiling.canonicalize_state(e, t, angle_of(pc.direction) + psi + side).state;
    } catch (const CornerHit&) {
    }
  }
}

std::optional<TrajectoryState> first_crossing(const LineArrangement& arr, const Point2& p, double dir) {
  const Vec2 d = direction_vector(dir);
  double best = std::numeric_limits<double>::infinity();
  for (const Line& l : arr.lines()) {
    const double den = l.normal.dot(d);
    if (std::abs(den) < 1e-12) continue;
    const double s = -l.signed_distance(p) / den;
    if (s > 1e-9 && s < best) best = s;
  }
  if (!std::isfinite(best)) return std::nullopt;
  try {
    return arr.state_from_point(p + best * d, dir).state;
  } catch (const TilingError&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<GoodStart> sample_good_start(const LineArrangement& arr, Rng& rng, std::int64_t max_steps,
                                           int max_attempts) {
  const double radius = 1.5 * arr.zone_radius() + 1.0;
  const std::size_t need = 2 * arr.size();
  GoodStart g;
  for (int k = 0; k < max_attempts; ++k) {
    const Point2 p = arr.zone_center() + radius * direction_vector(rng.uniform(0.0, kTwoPi));
    const auto s = first_crossing(arr, p, rng.uniform(0.0, kTwoPi));
    if (!s) {
      ++g.discarded;
      continue;
    }
    Trajectory tr = trace(arr, *s, max_steps);
    if (tr.size() <= need || good_prefix(arr, tr) < need) {
      ++g.discarded;
      continue;
    }
    g.start = *s;
    g.trace = std::move(tr);
    return g;
  }
  return std::nullopt;
}

TilingSpec random_arrangement(std::size_t n, Rng& rng, double min_gap) {
  for (;;) {
    std::vector<LineSpec> lines;
    for (std::size_t k = 0; k < n; ++k)
      lines.push_back({rng.uniform(0.0, kPi), Point2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))});
    bool spread = true;
    for (std::size_t a = 0; a < n && spread; ++a)
      for (std::size_t b = a + 1; b < n && spread; ++b)
        spread = circular_distance(2 * lines[a].angle, 2 * lines[b].angle) / 2 >= min_gap;
    if (!spread) continue;
    TilingSpec spec = TilingSpec::line_arrangement(std::move(lines));
    try {
      (void)make_tiling(spec);
    } catch (const InvalidSpec&) {
      continue;
    }
    return spec;
  }
}

FoldPrediction fold_oracle(const Tiling& tiling, const Trajectory& tr, std::size_t count) {
  FoldPrediction fp;
  const std::size_t m = std::min(count, tr.size());
  if (m < 2) return fp;
  Affine2 g = identity_affine<double>();
  std::vector<Point2> q;
  for (std::size_t k = 0; k < m; ++k) {
    const Line line = tiling.edge_piece(tr.state(k).edge).line();
    const Point2 pk = tr.records[k].point;
    q.push_back(g.leftCols<2>() * pk + g.col(2));
    if (k > 0) g = compose(g, reflection_affine(line));
  }
  for (std::size_t k = 2; k < m; ++k) fp.residual = std::max(fp.residual, (q[k] - q[k - 2]).norm());
  const Vec2 u = tiling.edge_piece(tr.state(0).edge).direction;
  const Vec2 v = tiling.edge_piece(tr.state(1).edge).direction;
  const double gamma = fold_angle(angle_between(u, v));
  if (gamma < 1e-9) {
    fp.drift = true;
    fp.period = 2;
    return fp;
  }
  // Two reflections in lines at angle gamma rotate by 2 gamma.
  for (std::int64_t order = 1; order <= 64; ++order) {
    if (circular_distance(normalize_direction(2.0 * gamma * static_cast<double>(order)), 0.0) < 1e-9) {
      fp.period = 2 * order;
      break;
    }
  }
  return fp;
}

std::vector<double> drift_spacings(const Tiling& tiling, const Trajectory& tr, int n) {
  (void)tiling;
  std::vector<double> gaps;
  const std::size_t last = static_cast<std::size_t>(12 * (n - 1));
  for (std::size_t a = 0; a + 12 <= last && a + 12 < tr.size(); ++a) {
    if (a % 4 == 1 || a % 4 == 2) continue;
    if (tr.state(a).edge != tr.state(a + 12).edge) {
      gaps.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    gaps.push_back((tr.records[a + 12].point - tr.records[a].point).norm());
  }
  return gaps;
}

// ------------------------------------------------------------------- scan

namespace {

// Orbits in a band share their itinerary; the key is the cyclic itinerary
// of reduced (edge slot, tile slot) pairs in its smallest rotation.
struct OrbitKey {
  int kind;
  std::int64_t period;
  std::vector<std::pair<int, int>> itinerary;
  auto operator<=>(const OrbitKey&) const = default;
};

OrbitKey orbit_key(const Tiling& tiling, const Trajectory& tr, const Classification& c, TrajectoryState& rep) {
  const auto p = static_cast<std::size_t>(c.period);
  std::vector<std::pair<int, int>> seq(p);
  for (std::size_t k = 0; k < p; ++k) {
    const CanonicalState cs = tiling.canonical(tr.state(k));
    seq[k] = {cs.reduced.edge.slot, cs.reduced.tile.slot};
  }
  std::size_t best = 0;
  std::vector<std::pair<int, int>> best_seq = seq;
  for (std::size_t r = 1; r < p; ++r) {
    std::vector<std::pair<int, int>> rot(seq.begin() + static_cast<std::ptrdiff_t>(r), seq.end());
    rot.insert(rot.end(), seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(r));
    if (rot < best_seq) {
      best_seq = std::move(rot);
      best = r;
    }
  }
  rep = tiling.canonical(tr.state(best)).reduced;
  return {static_cast<int>(c.kind), c.period, std::move(best_seq)};
}

}  // namespace

ScanResult scan(const TilingSpec& spec, const ScanConfig& config) {
  if (config.t_samples < 1 || config.dir_samples < 1 || config.max_steps < 2)
    throw std::invalid_argument("scan grid must be non-empty");
  ScanResult res;
  res.spec = spec;
  res.config = config;
  auto tiling = make_tiling(spec);
  if (!tiling->translation_lattice()) throw InvalidSpec("scan needs a periodic tiling");
  const auto slots = tiling->edge_slot_names().size();
  std::map<OrbitKey, OrbitEntry> found;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const EdgeRef e{0, 0, static_cast<int>(slot)};
    const double base = angle_of(tiling->edge_piece(e).direction);
    for (int it = 0; it < config.t_samples; ++it) {
      const double t = (it + 0.5) / config.t_samples;
      for (int id = 0; id < config.dir_samples; ++id) {
        // Directions cover both sides of the edge, avoiding the edge itself.
        const int up = (config.dir_samples + 1) / 2;
        const bool first_side = id < up;
        const int count = first_side ? up : config.dir_samples - up;
        const int k = first_side ? id : id - up;
        const double dir = base + (first_side ? 0.0 : kPi) + kPi * (k + 0.5) / count;
        ++res.starts;
        TrajectoryState start;
        try {
          start = tiling->canonicalize_state(e, t, dir).state;
        } catch (const std::exception&) {
          res.kinds["invalid_start"]++;
          continue;
        }
        const Trajectory tr = trace(*tiling, start, config.max_steps);
        const Classification c = classify_trajectory(*tiling, tr, config.eps_match);
        res.kinds[to_string(c.kind)]++;
        if (!is_recurrent(c.kind)) continue;
        (c.kind == ClassKind::periodic ? res.periodic_hist : res.drift_hist)[c.period]++;
        TrajectoryState rep;
        const OrbitKey key = orbit_key(*tiling, tr, c, rep);
        auto [pos, inserted] = found.try_emplace(key);
        if (inserted) {
          pos->second.kind = c.kind;
          pos->second.period = c.period;
          pos->second.drift = c.drift;
          pos->second.start = rep;
        }
        pos->second.hits++;
      }
    }
  }
  for (auto& [key, entry] : found) res.orbits.push_back(entry);
  return res;
}

Json to_json(const ScanResult& r) {
  auto hist = [](const std::map<std::int64_t, std::int64_t>& h) {
    Json j = Json::object();
    for (const auto& [p, n] : h) j[std::to_string(p)] = n;
    return j;
  };
  std::int64_t two_mod_four = 0;
  for (const auto& o : r.orbits)
    if (o.kind == ClassKind::periodic && o.period % 4 == 2) ++two_mod_four;
  Json orbits = Json::array();
  for (const auto& o : r.orbits) {
    Json j = {{"kind", to_string(o.kind)}, {"period", o.period}};
    if (o.kind == ClassKind::drift_periodic) j["drift"] = Json::array({o.drift.x(), o.drift.y()});
    j["start"] = {{"edge", to_json(o.start.edge)}, {"t", o.start.t}, {"dir", o.start.dir}};
    j["hits"] = o.hits;
    orbits.push_back(std::move(j));
  }
  return {{"v", 1},
          {"tiling", to_json(r.spec)},
          {"grid",
           {{"t_samples", r.config.t_samples},
            {"dir_samples", r.config.dir_samples},
            {"max_steps", r.config.max_steps},
            {"eps_match", r.config.eps_match}}},
          {"starts", r.starts},
          {"kinds", r.kinds},
          {"periodic_histogram", hist(r.periodic_hist)},
          {"drift_histogram", hist(r.drift_hist)},
          {"bands", r.orbits.size()},
          {"periodic_bands_period_2_mod_4", two_mod_four},
          {"orbits", std::move(orbits)}};
}

std::string to_csv(const ScanResult& r) {
  std::ostringstream os;
  os << "kind,period,drift_x,drift_y,edge_slot,t,dir,hits\n";
  for (const auto& o : r.orbits) {
    os << to_string(o.kind) << "," << o.period << "," << fmt("%.9f", o.drift.x()) << "," << fmt("%.9f", o.drift.y())
       << "," << o.start.edge.slot << "," << fmt("%.9f", o.start.t) << "," << fmt("%.9f", o.start.dir) << ","
       << o.hits << "\n";
  }
  return os.str();
}

}  // namespace tilebill
