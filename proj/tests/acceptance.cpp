// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "tilebill/constructions.hpp"
#include "tilebill/render.hpp"
#include "tilebill/session.hpp"
#include "tilebill/verify.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

using namespace tilebill;

namespace {

constexpr double kDeg = kPi / 180.0;
constexpr std::uint64_t kSeed = 1;

std::map<std::string, VerificationReport> g_reports;

const VerificationReport& report(const std::string& id) {
  auto it = g_reports.find(id);
  if (it == g_reports.end()) {
    VerifyConfig cfg;
    cfg.seed = kSeed;
    it = g_reports.emplace(id, verify_theorem(id, cfg)).first;
  }
  return it->second;
}

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
    pass = pass && ok;
  }
  void suites(std::initializer_list<const char*> ids) {
    for (const char* id : ids) {
      const auto& r = report(id);
      std::int64_t failed = 0;
      for (const auto& c : r.cases) failed += c.pass ? 0 : 1;
      require(r.pass, std::string(id) + " " + std::to_string(r.cases.size() - failed) + "/" +
                          std::to_string(r.cases.size()));
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Check regular() {
  Check c;
  c.suites({"mf_regular_tilings"});
  return c;
}

Check two_lines() {
  Check c;
  c.suites({"ek_two_lines"});
  const Json& s = report("ek_two_lines").summary;
  const Json& right = s.at("90");
  c.require(right.at("periodic") == 50 && right.at("good_starts") == 50,
            "90deg periodic(4) " + right.at("periodic").dump() + "/" + right.at("good_starts").dump());
  const Json& a88 = s.at("88");
  c.require(a88.at("periodic") == 0, "88deg periodic " + a88.at("periodic").dump());
  const double d = a88.at("alpha_sector_delta_deg").get<double>();
  c.require(std::abs(d + 8.0) <= 1e-9, "88deg delta " + fmt("%.12f", d) + " deg");

  // Direct trace from the preset start: theta_{4k} - theta_0 = -8k degrees.
  auto t = make_tiling(*tiling_preset("two_lines_88deg"));
  const auto& arr = dynamic_cast<const LineArrangement&>(*t);
  const Trajectory tr = trace(*t, t->state_from_point(Point2(3, 0), 1.7).state, 10000);
  const auto theta = crossing_angles(arr, tr);
  const std::size_t returns = good_prefix(arr, tr) / 4;
  double worst = 0.0;
  bool within = returns >= 10;
  for (std::size_t k = 1; k <= std::min<std::size_t>(returns, 10); ++k) {
    const double err = std::abs((theta[4 * k] - theta[0]) / kDeg + 8.0 * static_cast<double>(k));
    worst = std::max(worst, err);
    within = within && err <= 1e-9 * static_cast<double>(k);
  }
  c.require(within, std::to_string(returns) + " returns, max |delta_k + 8k| " + fmt("%.2e", worst) + " deg");
  return c;
}

Check odd() {
  Check c;
  c.suites({"ek_three_lines", "odd_lines_2n"});
  return c;
}

Check even() {
  Check c;
  c.suites({"even_lines_condition"});
  return c;
}

Check spiral() {
  Check c;
  c.suites({"spiral_odd_perturbation"});
  return c;
}

Check iso() {
  Check c;
  c.suites({"iso_classification", "iso_period_bounds"});
  return c;
}

Check right() {
  Check c;
  c.suites({"right_bisect_escape", "right_drift_pi_over_2n"});
  return c;
}

Check period10() {
  Check c;
  c.suites({"triangle_period10_region"});
  const ScanResult s = scan(TilingSpec::triangle(8 * kDeg, 79 * kDeg));
  std::int64_t bands = 0;
  for (const auto& o : s.orbits)
    if (o.kind == ClassKind::periodic && o.period == 34) ++bands;
  c.require(bands > 0, "scan 8/79/93: " + std::to_string(bands) + " period-34 bands among " +
                           std::to_string(s.orbits.size()));
  return c;
}

Check lemmas() {
  Check c;
  c.suites({"trihex_lemma_turner", "trihex_lemma_quadrilateral", "trihex_lemma_quad_triangle", "trihex_lemma_pentagon"});
  return c;
}

Check trihex() {
  Check c;
  c.suites({"trihex_period6", "trihex_period12", "trihex_period24", "trihex_drift_6n", "trihex_drift_12n_minus_6",
            "dense_spacing"});
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check determinism() {
  Check c;
  int same = 0, total = 0;
  for (const auto& id : theorem_ids()) {
    VerifyConfig cfg;
    cfg.seed = kSeed;
    ++total;
    if (to_json(verify_theorem(id, cfg)).dump(2) == to_json(report(id)).dump(2)) ++same;
  }
  c.require(same == total, "reports identical on rerun " + std::to_string(same) + "/" + std::to_string(total));

  struct Figure {
    const char* file;
    ConstructionResult construction;
    std::int64_t steps;
  };
  const std::vector<Figure> figures{{"equilateral_period6.svg", triangle_period6(TilingSpec::equilateral()), 7},
                                    {"trihex_period24.svg", trihex_period24(), 25},
                                    {"trihex_drift_n3.svg", trihex_drift_12n_minus_6(3), 91}};
  int stable = 0;
  for (const auto& f : figures) {
    auto t = make_tiling(f.construction.spec);
    const std::string svg = render_svg(*t, {trace(*t, f.construction.start, f.steps)});
    const std::string want = read_file(std::string(TILEBILL_GOLDEN_DIR) + "/" + f.file);
    if (!want.empty() && svg == want) ++stable;
  }
  c.require(stable == static_cast<int>(figures.size()),
            "golden SVGs " + std::to_string(stable) + "/" + std::to_string(figures.size()));
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"regular tilings", regular},
      {"two lines", two_lines},
      {"three lines and odd arrangements", odd},
      {"even arrangements", even},
      {"spiraling under perturbation", spiral},
      {"isosceles tilings", iso},
      {"right triangles", right},
      {"period 10 and the 34-periodic scan", period10},
      {"trihexagonal lemma oracles", lemmas},
      {"trihexagonal orbits", trihex},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[k].second();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!c.pass) ++failed;
    std::printf("criterion %2zu %s  %s: %s (%.1fs)\n", k + 1, c.pass ? "PASS" : "FAIL", criteria[k].first,
                c.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
