#pragma once

#include <array>
#include <vector>

#include "specgap/domain.hpp"

namespace specgap::spectral {

// Conforming triangulation of a truncated domain. Element size is graded
// proportionally to y, so elements are near-uniform in the hyperbolic metric.
struct Mesh {
  static constexpr int kTruncationTag = -1;

  struct BoundaryEdge {
    int a = 0, b = 0;
    int tag = kTruncationTag;  // wall index, or kTruncationTag for artificial cuts
  };

  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<BoundaryCondition> wall_bcs;  // by wall index, copied from the domain
  double target_h = 0.0;
  Truncation trunc;

  double triangle_area(int t) const;
  double min_angle_deg() const;
  bool vertex_on_boundary(int v) const;  // precomputed flag
  const std::vector<char>& boundary_flags() const { return on_boundary_; }

  std::vector<char> on_boundary_;  // filled by build_mesh
};

/// Build a graded mesh with target hyperbolic edge length h. Curved walls are
/// approximated by inscribed polylines sampled at the local target length, so
/// chord sagitta stays below h^2 for the radii used here. Throws when h is too
/// coarse to resolve the domain.
Mesh build_mesh(const HyperbolicDomain& domain, double h);

}  // namespace specgap::spectral
