#pragma once

#include <Eigen/Dense>

#include "specgap/assemble.hpp"

namespace specgap::spectral {

struct EigenSolveOptions {
  double shift = 1.0;   // factorize stiffness + shift*mass
  double tol = 1e-9;    // relative residual ||Av - lambda Bv|| / ||Bv||
  int max_basis = 0;    // Krylov basis cap; 0 picks automatically
  unsigned seed = 12345u;
};

struct EigenSolveResult {
  std::vector<double> values;   // ascending
  Eigen::MatrixXd vectors;      // reduced dofs, column i pairs with values[i]
  std::vector<double> residuals;
  int iterations = 0;
};

/// k smallest eigenpairs of the symmetric pencil (stiffness, mass).
/// Small systems are solved densely; larger ones by shift-invert Lanczos with
/// full reorthogonalization in the mass inner product. Throws on
/// non-convergence with diagnostics in the message.
EigenSolveResult solve_lowest(const AssembledSystem& sys, int k, const EigenSolveOptions& opts = {});

}  // namespace specgap::spectral
