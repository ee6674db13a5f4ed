#pragma once

#include <Eigen/Sparse>

#include <functional>

#include "specgap/mesh.hpp"

namespace specgap::spectral {

// Weak form of the hyperbolic Laplacian on the upper half-plane: by conformal
// invariance of the Dirichlet energy the Rayleigh quotient is
//   int |grad u|^2 dx dy   /   int u^2 / y^2 dx dy,
// so the stiffness matrix is the plain Euclidean P1 stiffness and only the
// mass matrix carries the 1/y^2 weight (3-point edge-midpoint quadrature,
// exact for quadratics; the weight is bounded since y >= eps on the mesh).
struct AssembledSystem {
  Eigen::SparseMatrix<double> stiffness;  // symmetric positive semidefinite
  Eigen::SparseMatrix<double> mass;       // symmetric positive definite
  std::vector<int> free_to_full;          // reduced dof -> mesh vertex
  std::vector<int> full_to_free;          // -1 for eliminated vertices
  int full_size = 0;

  int size() const { return static_cast<int>(free_to_full.size()); }

  /// Scatter a reduced vector to mesh vertices (eliminated vertices get 0).
  Eigen::VectorXd to_full(const Eigen::VectorXd& reduced) const;
};

// Treatment of the artificial truncation edges.
//
// A Neumann floor on a funnel cut reflects the growing solution branch: the
// eigenvalues converge only like eps^(2*nu) and the floor carries localized
// surface modes below 1/4. The `matched` mode instead imposes the Robin
// condition y du/dy = s0 u on funnel floors, which is transparent for the
// decaying branch y^s once s0 = s; cusp cuts (bottom spans of width O(eps))
// and the top cut stay Neumann so finite-area constants survive. The matched
// exponent is iterated to self-consistency by the spectrum driver.
struct TruncationTreatment {
  enum class Mode { neumann, dirichlet, matched };
  Mode mode = Mode::neumann;
  double matched_exponent = 0.75;  // s0 for matched funnel floors

  static TruncationTreatment neumann() { return {}; }
  static TruncationTreatment dirichlet() { return {Mode::dirichlet, 0.0}; }
  static TruncationTreatment matched(double s0) { return {Mode::matched, s0}; }
};

/// Assemble with per-wall boundary conditions from the mesh; vertices on
/// Dirichlet edges are eliminated, Neumann is natural. Artificial truncation
/// edges follow `trunc`.
AssembledSystem assemble(const Mesh& mesh, TruncationTreatment trunc = {});

inline AssembledSystem assemble(const Mesh& mesh, BoundaryCondition truncation_bc) {
  return assemble(mesh, truncation_bc == BoundaryCondition::dirichlet
                            ? TruncationTreatment::dirichlet()
                            : TruncationTreatment::neumann());
}

/// Bottom truncation edges grouped into runs; a run wider than a few eps cuts
/// a funnel, a narrow one cuts a cusp sliver.
bool has_funnel_floor(const Mesh& mesh);

/// Quadrature value of int u^2 / y^2 over elements selected by `keep`
/// (same 3-point rule as the mass matrix); u given on mesh vertices.
double weighted_mass(const Mesh& mesh, const Eigen::VectorXd& u_full,
                     const std::function<bool(double, double)>& keep);

}  // namespace specgap::spectral
