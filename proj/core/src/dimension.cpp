#include "specgap/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>

namespace specgap::dimension {

double base_eigenvalue(double delta, int n) {
  if (n < 1) throw std::invalid_argument("base_eigenvalue: n must be >= 1");
  if (!(delta > 0.0) || delta > static_cast<double>(n))
    throw std::invalid_argument("base_eigenvalue: delta outside (0, n]");
  return delta * (static_cast<double>(n) - delta);
}

double dimension_from_eigenvalue(double lambda0, int n) {
  if (n < 1) throw std::invalid_argument("dimension_from_eigenvalue: n must be >= 1");
  const double half = 0.5 * static_cast<double>(n);
  const double disc = half * half - lambda0;
  if (lambda0 < 0.0 || disc < -1e-15)
    throw std::invalid_argument("dimension_from_eigenvalue: lambda0 outside [0, n^2/4]");
  return half + std::sqrt(std::max(0.0, disc));
}

LimitSetSample sample_hecke_limit_set(double mu, int depth, int K, const HeckeSampleOptions& opts) {
  if (!(mu > 2.0)) throw std::invalid_argument("sample_hecke_limit_set: mu must exceed 2 (non-lattice)");
  if (depth < 1 || K < 1) throw std::invalid_argument("sample_hecke_limit_set: depth and K must be >= 1");

  LimitSetSample out;
  out.ambient_dim = 1;
  out.depth = depth;
  out.generators = "x -> -1/(x + k*mu), 0 < |k| <= " + std::to_string(K) + ", mu = " + std::to_string(mu);

  // Limit points lie in [-c, c] with c the fixed point of x -> 1/(mu - x).
  const double c = (mu - std::sqrt(mu * mu - 4.0)) / 2.0;
  const double diam0 = 2.0 * c;

  struct Node {
    double x;       // current point f_w(0)
    double deriv;   // |f_w'| along the word, cylinder size ~ deriv * diam0
    int len;
  };
  std::vector<Node> stack;
  stack.push_back({0.0, 1.0, 0});
  out.points.push_back({0.0, 0.0, false});

  while (!stack.empty()) {
    const Node n = stack.back();
    stack.pop_back();
    if (n.len >= depth || n.deriv * diam0 < opts.diameter_tol) continue;
    for (int k = -K; k <= K; ++k) {
      if (k == 0) continue;
      const double den = n.x + k * mu;
      const double x = -1.0 / den;
      const double deriv = n.deriv / (den * den);
      out.points.push_back({x, 0.0, false});
      stack.push_back({x, deriv, n.len + 1});
    }
  }
  return out;
}

LimitSetSample apollonian_boundary_sample(const packing::CirclesQuadruple& root, double T) {
  LimitSetSample out;
  out.ambient_dim = 2;
  out.depth = 0;
  out.generators = "apollonian tangency points, curvature <= " + std::to_string(T);
  packing::for_each_tangency(root, T, [&](const geom::Point& p) { out.points.push_back(p); });
  return out;
}

std::vector<double> dyadic_scales(int lo, int hi) {
  if (lo > hi) std::swap(lo, hi);
  std::vector<double> s;
  for (int e = lo; e <= hi; ++e) s.push_back(std::pow(0.5, e));
  return s;
}

DimensionEstimate box_counting_dimension(const LimitSetSample& sample, std::vector<double> scales) {
  if (sample.points.empty()) throw std::invalid_argument("box_counting_dimension: empty sample");
  std::sort(scales.begin(), scales.end(), std::greater<>());
  if (scales.size() < 4 || !(scales.front() / scales.back() >= 100.0))
    throw std::invalid_argument("box_counting_dimension: need >= 4 scales spanning two decades");

  DimensionEstimate est;
  est.method = "box-count";
  est.scales = scales;

  bool degenerate = true;
  for (const auto& p : sample.points) {
    if (p.x != sample.points.front().x || p.y != sample.points.front().y) {
      degenerate = false;
      break;
    }
  }
  if (degenerate) {
    est.delta = 0.0;
    est.degenerate = true;
    return est;
  }

  std::vector<double> xs, ys;
  std::unordered_set<std::uint64_t> boxes;
  for (double s : scales) {
    boxes.clear();
    const double inv = 1.0 / s;
    for (const auto& p : sample.points) {
      const auto ix = static_cast<std::int64_t>(std::floor(p.x * inv));
      const auto iy = sample.ambient_dim == 2 ? static_cast<std::int64_t>(std::floor(p.y * inv)) : 0;
      // pack two 32-bit box indices; samples here are far smaller than 2^31 boxes
      boxes.insert((static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
                   static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)));
    }
    xs.push_back(std::log(inv));
    ys.push_back(std::log(static_cast<double>(boxes.size())));
  }

  const int n = static_cast<int>(xs.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  est.delta = sxy / sxx;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - my - est.delta * (xs[i] - mx);
    rss += r * r;
  }
  est.stderr = (n > 2) ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return est;
}

}  // namespace specgap::dimension
