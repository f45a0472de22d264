#pragma once
// Theorem suites over constructions and seeded sweeps. Every case carries the
// tiling, start and step budget needed to replay it from the CLI.

#include "tilebill/io.hpp"
#include "tilebill/line_arrangement.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tilebill {

/// Seeded uniform doubles built on mt19937_64 alone; the standard
/// distributions are not reproducible across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  int samples = 0;             // 0 selects the suite default
  std::int64_t max_steps = 0;  // 0 selects the suite default
};

struct CaseOutcome {
  std::string label;
  Json params = Json::object();
  Json replay;  // {"tiling", "start", "max_steps"}, null for non-trace cases
  Json expected;
  Json observed;
  Json residuals = Json::object();
  bool pass = true;
  std::string note;
};

struct VerificationReport {
  std::string theorem;
  std::uint64_t seed = 0;
  Json grid = Json::object();
  Json summary = Json::object();
  std::vector<CaseOutcome> cases;
  bool pass = true;
};

const std::vector<std::string>& theorem_ids();
/// Throws std::invalid_argument for an unknown id.
VerificationReport verify_theorem(const std::string& id, const VerifyConfig& config = {});
Json to_json(const VerificationReport& r);
std::string to_text(const VerificationReport& r);

/// Random start on an edge of cell (0, 0), away from corners and from
/// grazing directions.
TrajectoryState random_edge_start(const Tiling& tiling, Rng& rng);

/// First crossing of the ray from p (not on a line) with the arrangement.
std::optional<TrajectoryState> first_crossing(const LineArrangement& arr, const Point2& p, double dir);

struct GoodStart {
  TrajectoryState start;
  Trajectory trace;
  int discarded = 0;
};
/// Samples starts on a circle around the central zone until one is good.
std::optional<GoodStart> sample_good_start(const LineArrangement& arr, Rng& rng,
                                           std::int64_t max_steps, int max_attempts = 10000);

/// Simple arrangement of n lines with pairwise angles of at least min_gap.
TilingSpec random_arrangement(std::size_t n, Rng& rng, double min_gap = 0.15);

/// Folds a trajectory in a tiling that is mirror symmetric across every edge
/// onto the first tile. The folded crossings alternate between two points;
/// `period` is the count predicted from the angle between the two folded
/// edges (0 when they are parallel, i.e. drift period 2).
struct FoldPrediction {
  double residual = 0.0;
  std::int64_t period = 0;
  bool drift = false;
};
FoldPrediction fold_oracle(const Tiling& tiling, const Trajectory& tr, std::size_t count = 40);

/// Same-edge gaps |p_{12k+i} p_{12(k+1)+i}| inside one period of the
/// trihex_drift_12n_minus_6 orbit, at crossings i = 0, 1 (mod 4).
std::vector<double> drift_spacings(const Tiling& tiling, const Trajectory& tr, int n);

struct ScanConfig {
  int t_samples = 24;
  int dir_samples = 48;
  std::int64_t max_steps = 2000;
  double eps_match = kDefaultMatchEps;
};

struct OrbitEntry {
  ClassKind kind = ClassKind::unknown;
  std::int64_t period = 0;
  Vec2 drift = Vec2::Zero();
  TrajectoryState start;  // representative state in cell (0, 0)
  std::int64_t hits = 0;
};

struct ScanResult {
  TilingSpec spec;
  ScanConfig config;
  std::int64_t starts = 0;
  std::map<std::string, std::int64_t> kinds;
  std::map<std::int64_t, std::int64_t> periodic_hist;
  std::map<std::int64_t, std::int64_t> drift_hist;
  std::vector<OrbitEntry> orbits;
};

/// Classifies a grid of starts on every edge slot of cell (0, 0) and
/// groups the recurrent orbits into bands by their cyclic itinerary.
ScanResult scan(const TilingSpec& spec, const ScanConfig& config = {});
Json to_json(const ScanResult& r);
std::string to_csv(const ScanResult& r);

}  // namespace tilebill
