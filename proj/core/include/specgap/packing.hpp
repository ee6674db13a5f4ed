#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "specgap/geom.hpp"

// Apollonian packing enumeration. The orbit is walked as a non-backtracking
// tree of Descartes quadruples: replacing one member of a quadruple by the
// other solution of the tangency problem is, in inversive coordinates, the
// reflection through the dual circle of the remaining three, and acts linearly
//   v_i' = 2(v_j + v_k + v_l) - v_i.
// Every non-backtracking step contributes exactly one new circle, so counting
// needs no deduplication. For the integral root (-1,2,2,3) everything runs in
// exact int64 arithmetic.

namespace specgap::packing {

template <class S>
struct QuadrupleT {
  std::array<S, 4> k{};

  S sum() const { return k[0] + k[1] + k[2] + k[3]; }
  friend bool operator==(const QuadrupleT&, const QuadrupleT&) = default;
};

using DescartesQuadruple = QuadrupleT<std::int64_t>;

/// (k1+k2+k3+k4)^2 - 2(k1^2+..+k4^2); zero iff the Descartes relation holds.
template <class S>
S descartes_defect(const QuadrupleT<S>& q) {
  const S s = q.sum();
  S ss{};
  for (const S& v : q.k) ss += v * v;
  return s * s - S(2) * ss;
}

/// Replace entry i by the other Descartes solution. Involution in i.
template <class S>
QuadrupleT<S> swap(const QuadrupleT<S>& q, int i) {
  QuadrupleT<S> out = q;
  out.k[i] = S(2) * (q.sum() - q.k[i]) - q.k[i];
  return out;
}

template <class S>
using CirclesQuadrupleT = std::array<geom::InversiveCircleT<S>, 4>;

using CirclesQuadruple = CirclesQuadrupleT<std::int64_t>;

/// Same swap on full inversive coordinates: reflect circle i through the dual
/// circle of the other three.
template <class S>
CirclesQuadrupleT<S> swap_circles(const CirclesQuadrupleT<S>& q, int i) {
  CirclesQuadrupleT<S> out = q;
  geom::InversiveCircleT<S> s{};
  for (int j = 0; j < 4; ++j) {
    if (j == i) continue;
    s.cocurv += q[j].cocurv;
    s.curv += q[j].curv;
    s.cx += q[j].cx;
    s.cy += q[j].cy;
  }
  out[i] = {S(2) * s.cocurv - q[i].cocurv, S(2) * s.curv - q[i].curv,
            S(2) * s.cx - q[i].cx, S(2) * s.cy - q[i].cy};
  return out;
}

/// Dual circle through the tangency points of the three circles other than i
/// (unit norm, orthogonal to all three). Reflection mirror of swap_circles.
geom::InversiveCircle dual_circle(const CirclesQuadrupleT<double>& q, int i);

/// Tangency point of two externally tangent circles (lines allowed for one).
geom::Point tangency_point(const geom::InversiveCircle& a, const geom::InversiveCircle& b);

// Classical bounded root (-1,2,2,3): bounding unit circle, two half circles,
// one third circle. Integral inversive coordinates.
DescartesQuadruple bounded_root();
CirclesQuadruple bounded_root_circles();

// Strip configuration: two parallel lines y=0, y=2 and two unit circles
// tangent to both. Used by the wall-orbit tests.
CirclesQuadruple strip_root_circles();

/// Geometric realization of an arbitrary bounded quadruple (one negative
/// curvature). Throws std::invalid_argument if the Descartes relation fails.
CirclesQuadrupleT<double> realize_root(const QuadrupleT<double>& q);

struct EnumerateOptions {
  int threads = 0;  // 0: hardware concurrency
};

/// Curvatures in (0, T] of the packing generated by `root`, sorted ascending.
/// Requires a bounded root: exactly one entry <= 0.
std::vector<std::int64_t> enumerate_curvatures(const DescartesQuadruple& root, double T,
                                               const EnumerateOptions& opts = {});

/// Full inversive data of all circles with curvature in (0, T], sorted by
/// (curv, cx, cy, cocurv). Exact integer orbit.
std::vector<geom::InversiveCircleT<std::int64_t>> enumerate_circles_geometric(
    const CirclesQuadruple& root, double T, const EnumerateOptions& opts = {});

/// Double-precision variant for non-integral roots.
std::vector<geom::InversiveCircle> enumerate_circles_geometric(
    const CirclesQuadrupleT<double>& root, double T, const EnumerateOptions& opts = {});

/// Visit every tangency point between a new circle and the three it touches,
/// for all circles with curvature in (0, T]. Used for residual-set sampling.
void for_each_tangency(const CirclesQuadruple& root, double T,
                       const std::function<void(const geom::Point&)>& fn);

struct CountProfile {
  std::vector<double> thresholds;      // ascending
  std::vector<std::int64_t> counts;    // N(T) per threshold, nondecreasing
  DescartesQuadruple root;
};

/// N(T) for each threshold in one pass to max(Ts).
CountProfile count_profile(const DescartesQuadruple& root, std::vector<double> thresholds,
                           const EnumerateOptions& opts = {});

struct GrowthFit {
  double delta_hat = 0.0;
  double stderr = 0.0;
  int points_used = 0;
};

/// Least-squares slope of log N(T) against log T over thresholds >= tmin.
/// Requires at least 5 usable points.
GrowthFit fit_growth_exponent(const CountProfile& profile, double tmin);

}  // namespace specgap::packing
