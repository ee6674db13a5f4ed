#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

// Planar inversive geometry: circles and lines in one 4-vector representation,
// inversions (reflections), and real Mobius actions on the upper half-plane.
//
// A circle with signed curvature b != 0 and center (x, y) is stored as
//   (cocurv, curv, cx, cy) = (b*(x^2+y^2) - 1/b, b, b*x, b*y);
// a line with unit normal n and offset d (points p with n.p = d) as
//   (2d, 0, nx, ny).
// Both satisfy cx^2 + cy^2 - curv*cocurv = 1. Negating all four components
// gives the same circle with the opposite interior.

namespace specgap::geom {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool at_infinity = false;
};

template <class S>
struct InversiveCircleT {
  S cocurv{};  // curvature of the image under z -> z/|z|^2
  S curv{};    // signed curvature, 0 for lines
  S cx{};      // curvature * center-x (lines: unit normal x)
  S cy{};      // curvature * center-y (lines: unit normal y)

  friend bool operator==(const InversiveCircleT&, const InversiveCircleT&) = default;
};

using InversiveCircle = InversiveCircleT<double>;

/// Twice the inversive pairing; integral whenever all coordinates are.
template <class S>
inline S doubled_inversive_product(const InversiveCircleT<S>& a, const InversiveCircleT<S>& b) {
  return S(2) * (a.cx * b.cx + a.cy * b.cy) - (a.curv * b.cocurv + a.cocurv * b.curv);
}

inline double inversive_product(const InversiveCircle& a, const InversiveCircle& b) {
  return 0.5 * doubled_inversive_product(a, b);
}

/// cx^2 + cy^2 - curv*cocurv; equals 1 on the unit-norm slice.
template <class S>
inline S inversive_norm(const InversiveCircleT<S>& c) {
  return c.cx * c.cx + c.cy * c.cy - c.curv * c.cocurv;
}

/// Reflect circle c through mirror m (inversion for circles, Euclidean
/// reflection for lines). Exact over integer scalars.
template <class S>
inline InversiveCircleT<S> reflect_circle(const InversiveCircleT<S>& m, const InversiveCircleT<S>& c) {
  const S dp = doubled_inversive_product(c, m);
  return {c.cocurv - dp * m.cocurv, c.curv - dp * m.curv, c.cx - dp * m.cx, c.cy - dp * m.cy};
}

inline InversiveCircle circle_from_center_radius(double x, double y, double signed_curvature) {
  if (signed_curvature == 0.0) throw std::invalid_argument("circle_from_center_radius: zero curvature");
  const double b = signed_curvature;
  return {b * (x * x + y * y) - 1.0 / b, b, b * x, b * y};
}

/// Line {p : n.p = d}; n need not be normalized on input.
inline InversiveCircle line_from_normal_offset(double nx, double ny, double d) {
  const double len = std::hypot(nx, ny);
  if (len == 0.0) throw std::invalid_argument("line_from_normal_offset: zero normal");
  return {2.0 * d / len, 0.0, nx / len, ny / len};
}

inline bool is_line(const InversiveCircle& c, double tol = 1e-14) { return std::abs(c.curv) <= tol; }

inline double radius_of(const InversiveCircle& c) {
  if (is_line(c)) throw std::invalid_argument("radius_of: line has no radius");
  return 1.0 / std::abs(c.curv);
}

inline Point center_of(const InversiveCircle& c) {
  if (is_line(c)) throw std::invalid_argument("center_of: line has no center");
  return {c.cx / c.curv, c.cy / c.curv};
}

// Tangency convention: with circles oriented by interior, externally tangent
// pairs (disjoint interiors) pair to -1 and internally tangent pairs to +1.
// Tests and callers go through these predicates, not the raw sign.
inline bool is_externally_tangent(const InversiveCircle& a, const InversiveCircle& b, double tol = 1e-9) {
  return std::abs(inversive_product(a, b) + 1.0) <= tol;
}

inline bool is_internally_tangent(const InversiveCircle& a, const InversiveCircle& b, double tol = 1e-9) {
  return std::abs(inversive_product(a, b) - 1.0) <= tol;
}

inline bool is_tangent(const InversiveCircle& a, const InversiveCircle& b, double tol = 1e-9) {
  return is_externally_tangent(a, b, tol) || is_internally_tangent(a, b, tol);
}

inline bool is_orthogonal(const InversiveCircle& a, const InversiveCircle& b, double tol = 1e-9) {
  return std::abs(inversive_product(a, b)) <= tol;
}

enum class PairClass { intersecting, externally_tangent, internally_tangent, disjoint, nested };

/// Classify an oriented pair by the pairing value alone.
inline PairClass classify_pair(const InversiveCircle& a, const InversiveCircle& b, double tol = 1e-9) {
  const double p = inversive_product(a, b);
  if (std::abs(p + 1.0) <= tol) return PairClass::externally_tangent;
  if (std::abs(p - 1.0) <= tol) return PairClass::internally_tangent;
  if (std::abs(p) < 1.0) return PairClass::intersecting;
  return p < 0.0 ? PairClass::disjoint : PairClass::nested;
}

/// Interiors disjoint (tangent or separated), the packing property.
inline bool interiors_disjoint(const InversiveCircle& a, const InversiveCircle& b, double tol = 1e-9) {
  return inversive_product(a, b) <= -1.0 + tol;
}

/// Reflect a plane point through a circle (inversion) or line mirror.
inline Point reflect_point(const InversiveCircle& mirror, const Point& p) {
  if (is_line(mirror)) {
    const double d = 0.5 * mirror.cocurv;
    const double t = mirror.cx * p.x + mirror.cy * p.y - d;
    return {p.x - 2.0 * t * mirror.cx, p.y - 2.0 * t * mirror.cy, p.at_infinity};
  }
  const Point q = center_of(mirror);
  const double r2 = 1.0 / (mirror.curv * mirror.curv);
  const double dx = p.x - q.x, dy = p.y - q.y;
  const double s = dx * dx + dy * dy;
  if (s == 0.0) throw std::invalid_argument("reflect_point: point at mirror center");
  return {q.x + r2 * dx / s, q.y + r2 * dy / s, false};
}

// --- Mobius transformations of the upper half-plane -------------------------

struct Mobius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }

  /// Scale so |det| = 1.
  Mobius normalized() const {
    const double dt = det();
    if (dt == 0.0) throw std::invalid_argument("Mobius: singular matrix");
    const double s = 1.0 / std::sqrt(std::abs(dt));
    return {a * s, b * s, c * s, d * s};
  }

  static Mobius identity() { return {}; }
  static Mobius translation(double mu) { return {1.0, mu, 0.0, 1.0}; }
  /// z -> -1/z
  static Mobius inversion() { return {0.0, -1.0, 1.0, 0.0}; }

  friend Mobius operator*(const Mobius& l, const Mobius& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

/// Apply a determinant-normalized Mobius map. det < 0 acts through z -> conj(z)
/// so the upper half-plane is preserved either way. Points falling on the pole
/// come back flagged at_infinity.
inline Point apply_mobius(const Mobius& m, const Point& p) {
  std::complex<double> z(p.x, m.det() < 0.0 ? -p.y : p.y);
  if (p.at_infinity) {
    if (m.c == 0.0) return {0.0, 0.0, true};
    return {m.a / m.c, 0.0, false};
  }
  const std::complex<double> den = m.c * z + m.d;
  if (std::abs(den) < 1e-300) return {0.0, 0.0, true};
  const std::complex<double> w = (m.a * z + m.b) / den;
  return {w.real(), w.imag(), false};
}

/// Hyperbolic distance in the upper half-plane.
inline double hyperbolic_distance(const Point& z, const Point& w) {
  if (z.y <= 0.0 || w.y <= 0.0) throw std::invalid_argument("hyperbolic_distance: boundary point");
  const double dx = z.x - w.x, dy = z.y - w.y;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y));
}

}  // namespace specgap::geom
