#pragma once
// Planar geometry primitives shared by every tiling: points, directed angles,
// lines in normal form, reflections, and planar isometries stored as 2x3
// affine matrices.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace tilebill {

template <typename Scalar>
using Vec2T = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Affine2T = Eigen::Matrix<Scalar, 2, 3>;

using Vec2 = Vec2T<double>;
using Point2 = Vec2T<double>;
using Affine2 = Affine2T<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any angle onto [0, 2*pi).
template <typename Scalar>
Scalar normalize_direction(Scalar a) {
  using std::fmod;
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar r = fmod(a, two_pi);
  if (r < Scalar(0)) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

/// Maps an (unoriented) line angle onto [0, pi).
template <typename Scalar>
Scalar normalize_line_angle(Scalar a) {
  using std::fmod;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar r = fmod(a, pi);
  if (r < Scalar(0)) r += pi;
  if (r >= pi) r -= pi;
  return r;
}

/// Shortest signed difference a - b on the circle, in (-pi, pi].
template <typename Scalar>
Scalar circular_difference(Scalar a, Scalar b) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar d = normalize_direction(a - b);
  if (d > pi) d -= Scalar(2) * pi;
  return d;
}

template <typename Scalar>
Scalar circular_distance(Scalar a, Scalar b) {
  using std::abs;
  return abs(circular_difference(a, b));
}

template <typename Scalar>
Vec2T<Scalar> direction_vector(Scalar angle) {
  using std::cos;
  using std::sin;
  return {cos(angle), sin(angle)};
}

template <typename Derived>
typename Derived::Scalar angle_of(const Eigen::MatrixBase<Derived>& v) {
  using std::atan2;
  return normalize_direction(atan2(v.y(), v.x()));
}

/// Unsigned angle in [0, pi] between two nonzero vectors.
template <typename Derived1, typename Derived2>
typename Derived1::Scalar angle_between(const Eigen::MatrixBase<Derived1>& u,
                                        const Eigen::MatrixBase<Derived2>& v) {
  using std::atan2;
  using std::abs;
  const auto cross = u.x() * v.y() - u.y() * v.x();
  return abs(atan2(cross, u.dot(v)));
}

template <typename Derived1, typename Derived2>
typename Derived1::Scalar cross2(const Eigen::MatrixBase<Derived1>& u,
                                 const Eigen::MatrixBase<Derived2>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

/// Line {p : normal . p = offset} with a unit normal.
template <typename Scalar>
struct LineT {
  Vec2T<Scalar> normal{Scalar(0), Scalar(1)};
  Scalar offset{0};

  static LineT through_point(const Vec2T<Scalar>& p, Scalar angle) {
    using std::cos;
    using std::sin;
    LineT l;
    l.normal = Vec2T<Scalar>(-sin(angle), cos(angle));
    l.offset = l.normal.dot(p);
    return l;
  }

  static LineT through_points(const Vec2T<Scalar>& a, const Vec2T<Scalar>& b) {
    return through_point(a, angle_of(Vec2T<Scalar>(b - a)));
  }

  /// Unit direction, rotated -pi/2 from the normal.
  Vec2T<Scalar> direction() const { return {normal.y(), -normal.x()}; }
  /// Line angle in [0, pi).
  Scalar angle() const { return normalize_line_angle(angle_of(direction())); }
  Scalar signed_distance(const Vec2T<Scalar>& p) const { return normal.dot(p) - offset; }
  Vec2T<Scalar> anchor() const { return normal * offset; }
  Vec2T<Scalar> project(const Vec2T<Scalar>& p) const { return p - signed_distance(p) * normal; }
  bool valid(Scalar tol = Scalar(1e-12)) const {
    using std::abs;
    return abs(normal.norm() - Scalar(1)) <= tol;
  }
};

using Line = LineT<double>;

template <typename Scalar>
Vec2T<Scalar> reflect_point(const Vec2T<Scalar>& p, const LineT<Scalar>& l) {
  return p - Scalar(2) * l.signed_distance(p) * l.normal;
}

/// Mirror image of a direction angle across the line.
template <typename Scalar>
Scalar reflect_direction(Scalar dir, const LineT<Scalar>& l) {
  return normalize_direction(Scalar(2) * l.angle() - dir);
}

/// Direction after crossing a boundary with refraction coefficient -1: the
/// outgoing ray is the mirror image of the incoming ray, so the component
/// along the boundary flips and the normal component is kept.
template <typename Scalar>
Scalar refract_direction(Scalar dir, const LineT<Scalar>& l) {
  return normalize_direction(reflect_direction(dir, l) + std::numbers::pi_v<Scalar>);
}

template <typename Scalar>
std::optional<Vec2T<Scalar>> intersect(const LineT<Scalar>& a, const LineT<Scalar>& b,
                                       Scalar parallel_tol = Scalar(1e-12)) {
  using std::abs;
  Eigen::Matrix<Scalar, 2, 2> m;
  m.row(0) = a.normal.transpose();
  m.row(1) = b.normal.transpose();
  const Scalar det = m.determinant();
  if (abs(det) <= parallel_tol) return std::nullopt;
  return m.inverse() * Vec2T<Scalar>(a.offset, b.offset);
}

enum class IsometryKind { identity, rotation, translation, reflection, glide };

inline const char* to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::identity: return "identity";
    case IsometryKind::rotation: return "rotation";
    case IsometryKind::translation: return "translation";
    case IsometryKind::reflection: return "reflection";
    case IsometryKind::glide: return "glide";
  }
  return "?";
}

/// A planar isometry: the raw affine map x -> A x + b plus its decoded kind.
/// Only the fields relevant to `kind` are meaningful.
template <typename Scalar>
struct IsometryT {
  Affine2T<Scalar> affine = Affine2T<Scalar>::Zero();
  IsometryKind kind = IsometryKind::identity;
  Vec2T<Scalar> center = Vec2T<Scalar>::Zero();   // rotation
  Scalar angle{0};                                // rotation, in [0, 2pi)
  Vec2T<Scalar> vector = Vec2T<Scalar>::Zero();   // translation
  LineT<Scalar> axis{};                           // reflection / glide
  Scalar shift{0};                                // glide, signed along axis.direction()

  Eigen::Matrix<Scalar, 2, 2> linear() const { return affine.template leftCols<2>(); }
  Vec2T<Scalar> translation() const { return affine.col(2); }
  Vec2T<Scalar> apply(const Vec2T<Scalar>& p) const { return linear() * p + translation(); }

  /// Direction shared by the fixed lines of a translation or glide.
  Vec2T<Scalar> fixed_direction() const {
    if (kind == IsometryKind::translation) return vector.normalized();
    return axis.direction();
  }
};

using Isometry = IsometryT<double>;

template <typename Scalar>
Affine2T<Scalar> identity_affine() {
  Affine2T<Scalar> m = Affine2T<Scalar>::Zero();
  m(0, 0) = m(1, 1) = Scalar(1);
  return m;
}

/// Affine composition: (outer o inner)(x) = outer(inner(x)).
template <typename Scalar>
Affine2T<Scalar> compose(const Affine2T<Scalar>& outer, const Affine2T<Scalar>& inner) {
  Affine2T<Scalar> r;
  r.template leftCols<2>() = outer.template leftCols<2>() * inner.template leftCols<2>();
  r.col(2) = outer.template leftCols<2>() * inner.col(2) + outer.col(2);
  return r;
}

template <typename Scalar>
Affine2T<Scalar> reflection_affine(const LineT<Scalar>& l) {
  Affine2T<Scalar> m;
  const Eigen::Matrix<Scalar, 2, 2> nn = l.normal * l.normal.transpose();
  m.template leftCols<2>() = Eigen::Matrix<Scalar, 2, 2>::Identity() - Scalar(2) * nn;
  m.col(2) = Scalar(2) * l.offset * l.normal;
  return m;
}

/// Decodes a raw affine map into its isometry kind. Entries are compared at
/// `tol`; a glide is distinguished from a reflection by |shift| > tol.
/// Throws std::invalid_argument when the linear part is not orthogonal.
template <typename Scalar>
IsometryT<Scalar> classify_isometry(const Affine2T<Scalar>& affine, Scalar tol = Scalar(1e-9)) {
  using std::abs;
  using std::atan2;
  IsometryT<Scalar> iso;
  iso.affine = affine;
  const Eigen::Matrix<Scalar, 2, 2> a = affine.template leftCols<2>();
  const Vec2T<Scalar> b = affine.col(2);
  if (!a.allFinite() || !b.allFinite())
    throw std::invalid_argument("classify_isometry: non-finite entries");
  const Eigen::Matrix<Scalar, 2, 2> gram = a.transpose() * a - Eigen::Matrix<Scalar, 2, 2>::Identity();
  if (gram.cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("classify_isometry: linear part is not orthogonal");
  const Scalar det = a.determinant();
  if (det > Scalar(0)) {
    const Scalar ang = normalize_direction(atan2(a(1, 0), a(0, 0)));
    if (circular_distance(ang, Scalar(0)) <= tol) {
      if (b.norm() <= tol) {
        iso.kind = IsometryKind::identity;
      } else {
        iso.kind = IsometryKind::translation;
        iso.vector = b;
      }
    } else {
      iso.kind = IsometryKind::rotation;
      iso.angle = ang;
      iso.center = (Eigen::Matrix<Scalar, 2, 2>::Identity() - a).inverse() * b;
    }
    return iso;
  }
  // Orientation reversing: a = [[cos 2p, sin 2p], [sin 2p, -cos 2p]] with axis angle p.
  const Scalar phi = atan2(a(1, 0), a(0, 0)) / Scalar(2);
  const Vec2T<Scalar> u = direction_vector(phi);
  const Vec2T<Scalar> n(-u.y(), u.x());
  iso.axis.normal = n;
  iso.axis.offset = n.dot(b) / Scalar(2);
  iso.shift = iso.axis.direction().dot(b);
  iso.kind = abs(iso.shift) > tol ? IsometryKind::glide : IsometryKind::reflection;
  return iso;
}

/// Composition of reflections applied in order: lines[0] first, lines.back() last.
template <typename Scalar>
IsometryT<Scalar> compose_reflections(std::span<const LineT<Scalar>> lines, Scalar tol = Scalar(1e-9)) {
  if (lines.empty()) throw std::invalid_argument("compose_reflections: no lines");
  Affine2T<Scalar> m = identity_affine<Scalar>();
  for (const auto& l : lines) m = compose(reflection_affine(l), m);
  return classify_isometry(m, tol);
}

template <typename Scalar>
IsometryT<Scalar> compose_isometries(const IsometryT<Scalar>& outer, const IsometryT<Scalar>& inner,
                                     Scalar tol = Scalar(1e-9)) {
  return classify_isometry(compose(outer.affine, inner.affine), tol);
}

/// Segment/ray/line piece {origin + s * direction : lo <= s <= hi}; lo and hi
/// may be infinite. direction is a unit vector.
struct Piece {
  Point2 origin = Point2::Zero();
  Vec2 direction{1.0, 0.0};
  double lo = 0.0;
  double hi = 1.0;

  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  Point2 at(double s) const { return origin + s * direction; }
  Line line() const { return Line::through_point(origin, angle_of(direction)); }
};

}  // namespace tilebill
