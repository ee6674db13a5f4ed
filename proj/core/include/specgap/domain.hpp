#pragma once

#include <string>
#include <vector>

#include "specgap/geom.hpp"

// Upper half-plane domains bounded by geodesic walls (vertical lines and
// semicircles centered on the real axis), truncated to eps <= y <= Y so the
// hyperbolic area integral dx dy / y^2 is finite.

namespace specgap::spectral {

enum class BoundaryCondition { neumann, dirichlet };

struct GeodesicWall {
  enum class Shape { vertical_line, semicircle };
  enum class Side { left_of, right_of, inside, outside };  // which side the domain lies on

  Shape shape = Shape::vertical_line;
  double c = 0.0;  // line x = c, or semicircle center (c, 0)
  double r = 0.0;  // semicircle radius
  Side side = Side::right_of;
  BoundaryCondition bc = BoundaryCondition::neumann;

  static GeodesicWall vertical(double x, Side side, BoundaryCondition bc = BoundaryCondition::neumann);
  static GeodesicWall semicircle(double center, double radius, Side side,
                                 BoundaryCondition bc = BoundaryCondition::neumann);

  /// Signed distance-like constraint: >= 0 on the domain side of the wall.
  double constraint(double x, double y) const;
  /// Euclidean distance from (x, y) to the wall curve.
  double distance(double x, double y) const;
};

struct Truncation {
  double eps = 0.05;
  double Y = 8.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct HyperbolicDomain {
  std::string name;
  std::vector<GeodesicWall> walls;
  Truncation trunc;

  /// Maximal x-intervals of the domain at height y (wall constraints only,
  /// truncation not applied). Sorted, disjoint.
  std::vector<Interval> xspan(double y) const;

  bool inside(double x, double y) const;  // walls and truncation

  /// Hyperbolic area of the truncated region, by adaptive quadrature.
  double area(double tol = 1e-12) const;

  HyperbolicDomain with_truncation(double eps, double Y) const;

  /// Throws std::invalid_argument when the walls bound an empty region or one
  /// of unbounded width.
  void validate() const;
};

/// Corner points where two walls (or a wall and a truncation line) meet on
/// the boundary of the truncated domain.
std::vector<geom::Point> boundary_corners(const HyperbolicDomain& d);

/// Heights at which the span structure can change: circle tops, corners,
/// truncation lines. Used as quadrature breakpoints and mesh snap lines.
std::vector<double> event_heights(const HyperbolicDomain& d);

// Named domains. The Hecke reflection domain for parameter mu > 2 is bounded
// by the y-axis, the unit circle, and the line x = mu/2; the cut x = 1 splits
// it into D1 (y-axis, unit circle, x=1, independent of mu) and the two-wall
// strip D2 (x=1, x=mu/2). All walls Neumann.
HyperbolicDomain hecke_D(double mu, Truncation t = {});
HyperbolicDomain hecke_D1(Truncation t = {});
HyperbolicDomain hecke_D2(double mu, Truncation t = {});

/// Reference strip 0 < x < width, 1 < y < e^L with Neumann side walls; the
/// horizontal cuts are the truncation lines. With Dirichlet truncation its
/// spectrum is 1/4 + (k*pi/L)^2, k = 1, 2, ...
HyperbolicDomain strip_domain(double width, double L);

}  // namespace specgap::spectral
