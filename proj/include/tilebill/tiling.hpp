#pragma once
// Tilings are implicit: every query is answered from coordinate formulas and
// faces are materialized on demand, so trajectories may wander arbitrarily far.

#include "tilebill/geom.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tilebill {

/// Distance (plane units) below which a point counts as lying on an edge or
/// vertex.
inline constexpr double kCornerEps = 1e-9;
/// Smallest accepted forward ray parameter when searching for an exit edge.
inline constexpr double kRayEps = 1e-12;

struct TilingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidSpec : TilingError {
  using TilingError::TilingError;
};
struct OnBoundary : TilingError {
  using TilingError::TilingError;
};
struct CornerHit : TilingError {
  using TilingError::TilingError;
};

/// Canonical edge identifier.
///  - lattice tilings: unit cell (i, j) plus the edge slot of that cell;
///  - line arrangements: i = line index, j = interval index along the line
///    (intervals ordered along the line's canonical direction), slot = 0.
struct EdgeRef {
  std::int64_t i = 0;
  std::int64_t j = 0;
  int slot = 0;
  auto operator<=>(const EdgeRef&) const = default;
};

/// Canonical face identifier.
///  - lattice tilings: unit cell (i, j) plus the tile slot within the cell;
///  - line arrangements: i = side mask (bit k set when the face lies on the
///    positive side of line k), j = 0, slot = 0.
struct TileRef {
  std::int64_t i = 0;
  std::int64_t j = 0;
  int slot = 0;
  auto operator<=>(const TileRef&) const = default;
};

/// One CCW boundary side of a tile. For unbounded faces the piece may be a ray
/// or a full line. The piece is oriented CCW around the tile, which need not
/// match the edge's canonical orientation.
struct BoundarySide {
  EdgeRef edge;
  Piece piece;
  TileRef neighbor;
};

enum class TilingVariant {
  line_arrangement,
  concurrent_lines,
  triangle,
  isosceles_triangle,
  right_triangle,
  square,
  regular_hexagon,
  equilateral_triangle,
  kaleidoscope_30_60_90,
  trihexagonal,
};

const char* to_string(TilingVariant v);
std::optional<TilingVariant> parse_variant(const std::string& name);

struct LineSpec {
  double angle = 0.0;  // radians
  Point2 point = Point2::Zero();
};

/// Declarative description of a tiling. Which fields are used depends on
/// `variant`:
///  - line_arrangement: `lines`
///  - concurrent_lines: `angles` = consecutive CCW angles between the lines
///    through the origin, starting from the horizontal line
///  - triangle: `alpha`, `beta` = base angles, base edge horizontal of length 1
///  - isosceles_triangle: `alpha` = vertex angle
///  - right_triangle: `alpha` = smallest angle, hypotenuse of length 1
struct TilingSpec {
  TilingVariant variant = TilingVariant::square;
  std::vector<LineSpec> lines;
  std::vector<double> angles;
  double alpha = 0.0;
  double beta = 0.0;

  static TilingSpec line_arrangement(std::vector<LineSpec> lines);
  static TilingSpec concurrent_lines(std::vector<double> angles);
  static TilingSpec triangle(double alpha, double beta);
  static TilingSpec isosceles(double vertex_angle);
  static TilingSpec right_triangle(double alpha);
  static TilingSpec square();
  static TilingSpec regular_hexagon();
  static TilingSpec equilateral();
  static TilingSpec kaleidoscope();
  static TilingSpec trihexagonal();

  bool is_arrangement() const {
    return variant == TilingVariant::line_arrangement || variant == TilingVariant::concurrent_lines;
  }
  /// Base angles (alpha, beta) of the tiling triangle for every triangle-tiling
  /// variant; throws InvalidSpec for other variants.
  std::pair<double, double> triangle_angles() const;
};

/// State of a ray sitting on an edge. `dir` is the absolute direction of
/// travel in [0, 2pi); `tile` is the face the ray is entering. `point` caches
/// the position encoded by (edge, t).
struct TrajectoryState {
  EdgeRef edge;
  double t = 0.5;
  double dir = 0.0;
  TileRef tile;
  Point2 point = Point2::Zero();
};

/// A state together with its lattice-reduced form. For tilings without a
/// translation lattice `reduced == state` and the cell offset is zero.
struct CanonicalState {
  TrajectoryState state;
  TrajectoryState reduced;
  std::int64_t cell_i = 0;
  std::int64_t cell_j = 0;
};

/// Result of searching the current tile for the edge where the ray leaves it.
struct ExitHit {
  enum class Status { ok, corner, escaped };
  Status status = Status::ok;
  EdgeRef edge;
  TileRef next_tile;
  Point2 point = Point2::Zero();
  Line line;
};

class Tiling {
 public:
  explicit Tiling(TilingSpec spec) : spec_(std::move(spec)) {}
  virtual ~Tiling() = default;
  Tiling(const Tiling&) = delete;
  Tiling& operator=(const Tiling&) = delete;

  const TilingSpec& spec() const { return spec_; }

  /// Face containing p; throws OnBoundary within kCornerEps of an edge.
  virtual TileRef locate(const Point2& p) const = 0;
  /// CCW boundary of a face.
  virtual std::vector<BoundarySide> tile_boundary(const TileRef& tile) const = 0;
  /// Edge geometry in canonical orientation (lexicographically smaller
  /// endpoint first; for arrangement edges, along the line's canonical
  /// direction).
  virtual Piece edge_piece(const EdgeRef& edge) const = 0;
  /// The two faces on either side of an edge.
  virtual std::pair<TileRef, TileRef> edge_tiles(const EdgeRef& edge) const = 0;
  /// Generators of the translation symmetry group, if the tiling is periodic.
  virtual std::optional<std::pair<Vec2, Vec2>> translation_lattice() const = 0;
  /// Lattice-reduced copies of an edge/tile (cell moved to (0, 0)).
  virtual EdgeRef reduce(const EdgeRef& e) const { return e; }
  virtual TileRef reduce_tile(const TileRef& t, const EdgeRef& e) const {
    (void)e;
    return t;
  }
  /// Translation carrying reduce(e) back onto e.
  virtual Vec2 cell_offset(const EdgeRef& e) const {
    (void)e;
    return Vec2::Zero();
  }
  /// Face color for two-colorable tilings (0/1), -1 otherwise.
  virtual int tile_color(const TileRef& tile) const = 0;
  virtual bool two_colorable() const = 0;
  /// Exit search from `p` (on edge `from`) travelling along unit `d` inside `tile`.
  virtual ExitHit find_exit(const TileRef& tile, const EdgeRef& from, const Point2& p,
                            const Vec2& d) const;

  /// Human-readable slot names (lattice tilings) used by the CLI.
  virtual std::vector<std::string> edge_slot_names() const { return {}; }
  virtual std::vector<std::string> tile_slot_names() const { return {}; }
  /// Unit of length used for rendering margins and tolerances.
  virtual double typical_edge_length() const { return 1.0; }

  /// Position fraction of p along the edge's canonical orientation.
  double edge_param(const EdgeRef& edge, const Point2& p) const;
  Point2 edge_point(const EdgeRef& edge, double t) const;

  /// Builds a state from an edge, a fraction along it and a travel direction.
  /// The entered face is the one `dir` points into. Throws CornerHit when t is
  /// within kCornerEps of an endpoint and std::invalid_argument when dir is
  /// parallel to the edge.
  CanonicalState canonicalize_state(const EdgeRef& edge, double t, double dir) const;
  /// Same as canonicalize_state but from a point known to lie on an edge.
  CanonicalState state_from_point(const Point2& p, double dir) const;
  /// Cell-reduced form of an existing state.
  CanonicalState canonical(const TrajectoryState& s) const;

 protected:
  /// All edges within `radius` of p (used by state_from_point).
  virtual std::vector<EdgeRef> edges_near(const Point2& p, double radius) const = 0;

 private:
  TilingSpec spec_;
};

/// Compiles a declarative spec; throws InvalidSpec when the spec violates its
/// invariants (non-simple arrangement, bad angles, ...).
std::shared_ptr<const Tiling> make_tiling(const TilingSpec& spec);

/// Convex hull (CCW) of all pairwise intersection points of the lines.
struct CentralZone {
  std::vector<Point2> vertices;
  bool contains(const Point2& p, double eps = 0.0) const;
  /// True when the open segment ab meets the interior of the zone.
  bool segment_enters(const Point2& a, const Point2& b) const;
};

/// Throws InvalidSpec when two lines are parallel or fewer than two lines are given.
CentralZone central_zone(std::span<const Line> lines);

/// Andrew's monotone chain; collinear points dropped.
std::vector<Point2> convex_hull(std::vector<Point2> pts);

}  // namespace tilebill
