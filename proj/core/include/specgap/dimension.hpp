#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "specgap/packing.hpp"

// Hausdorff dimension estimation for limit sets, and the conversion between
// the dimension delta and the bottom eigenvalue delta*(n - delta) of the
// Laplacian on the corresponding quotient.

namespace specgap::dimension {

/// delta*(n - delta). The value sits in the discrete spectrum only when
/// delta > n/2; at delta = n/2 it meets the continuous-spectrum threshold
/// (n/2)^2. Domain-checked: throws for delta outside (0, n].
double base_eigenvalue(double delta, int n);

/// Larger root n/2 + sqrt(n^2/4 - lambda0); inverse of base_eigenvalue on
/// delta >= n/2. Throws for lambda0 outside [0, n^2/4].
double dimension_from_eigenvalue(double lambda0, int n);

struct LimitSetSample {
  std::vector<geom::Point> points;  // boundary points; y = 0 for real samples
  int ambient_dim = 1;              // 1: subset of R, 2: planar set
  int depth = 0;                    // maximal word length used
  std::string generators;           // description of the generating system
};

struct HeckeSampleOptions {
  double diameter_tol = std::pow(0.5, 17);  // stop subdividing cylinders below this size
};

/// Orbit sample of the boundary limit set of the group generated by
/// z -> z + mu and z -> -1/z (mu > 2), through the truncated family of
/// contractions x -> -1/(x + k*mu), 0 < |k| <= K. Every word of length <=
/// depth is visited, branches are cut once their cylinder is smaller than
/// diameter_tol; base point 0. Deterministic.
LimitSetSample sample_hecke_limit_set(double mu, int depth, int K, const HeckeSampleOptions& opts = {});

/// Tangency points of the packing generated by `root`, circles up to
/// curvature T. A planar sample of the residual set.
LimitSetSample apollonian_boundary_sample(const packing::CirclesQuadruple& root, double T);

struct DimensionEstimate {
  double delta = 0.0;
  double stderr = 0.0;
  std::string method;          // "box-count" or "growth-fit"
  std::vector<double> scales;  // scales used by the estimator
  bool degenerate = false;     // all points coincide; delta forced to 0
};

/// Dyadic box-counting estimate: least-squares slope of log(occupied boxes)
/// against log(1/scale). Grids are anchored at the origin. Needs >= 4 scales
/// spanning at least two decades.
DimensionEstimate box_counting_dimension(const LimitSetSample& sample, std::vector<double> scales);

/// Default dyadic scale ladder 2^-lo .. 2^-hi.
std::vector<double> dyadic_scales(int lo, int hi);

}  // namespace specgap::dimension
