#include "specgap/packing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>

namespace specgap::packing {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

template <class Fn>
void run_indexed(int n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Bounded roots only: exactly one negative curvature (the enclosing circle)
// and no zero curvatures (zero entries encode lines, i.e. unbounded packings).
template <class S>
void validate_bounded_root(const QuadrupleT<S>& q) {
  if (descartes_defect(q) != S(0)) throw std::invalid_argument("root does not satisfy the Descartes relation");
  int nonpos = 0;
  for (const S& v : q.k) {
    if (v == S(0)) throw std::invalid_argument("root has a zero curvature (unbounded packing)");
    if (v < S(0)) ++nonpos;
  }
  if (nonpos != 1) throw std::invalid_argument("root must have exactly one negative curvature");
}

void validate_bounded_root_d(const QuadrupleT<double>& q) {
  double scale = 0.0;
  for (double v : q.k) scale = std::max(scale, v * v);
  if (std::abs(descartes_defect(q)) > 1e-9 * std::max(1.0, scale))
    throw std::invalid_argument("root does not satisfy the Descartes relation");
  int neg = 0;
  for (double v : q.k) {
    if (v == 0.0) throw std::invalid_argument("root has a zero curvature (unbounded packing)");
    if (v < 0.0) ++neg;
  }
  if (neg != 1) throw std::invalid_argument("root must have exactly one negative curvature");
}

// Non-backtracking walk over quadruple states. Visitor sees each new entry
// exactly once; subtrees are pruned when the new curvature exceeds the limit
// (new curvatures never decrease along reduced words from a reduced root).
template <class State, class CurvOf, class Visit>
void walk_subtree(State state, int last, double limit, const CurvOf& curv_of, const Visit& visit) {
  struct Frame {
    State s;
    int last;
  };
  std::vector<Frame> stack;
  stack.push_back({std::move(state), last});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    for (int i = 0; i < 4; ++i) {
      if (i == f.last) continue;
      State child = f.s.swapped(i);
      const double kv = curv_of(child, i);
      if (kv > limit) continue;
      visit(child, i);
      stack.push_back({std::move(child), i});
    }
  }
}

struct KState {
  QuadrupleT<std::int64_t> q;
  KState swapped(int i) const { return {swap(q, i)}; }
};

struct CState64 {
  CirclesQuadrupleT<std::int64_t> c;
  CState64 swapped(int i) const { return {swap_circles(c, i)}; }
};

struct CStateD {
  CirclesQuadrupleT<double> c;
  CStateD swapped(int i) const { return {swap_circles(c, i)}; }
};

// Shared parallel driver: a short breadth-first warmup grows the frontier,
// then each frontier node is an independent task with its own sink. Sinks are
// merged in frontier order, so the result is independent of thread timing.
template <class State, class CurvOf, class Out, class Emit>
std::vector<Out> walk_parallel(State root, double limit, int threads, const CurvOf& curv_of,
                               const Emit& emit) {
  struct Node {
    State s;
    int last;
  };
  std::vector<Out> head;
  std::vector<Node> frontier;
  frontier.push_back({std::move(root), -1});

  const std::size_t want = static_cast<std::size_t>(8 * std::max(1, threads));
  for (int depth = 0; depth < 12 && frontier.size() < want; ++depth) {
    std::vector<Node> next;
    bool grew = false;
    for (const Node& n : frontier) {
      for (int i = 0; i < 4; ++i) {
        if (i == n.last) continue;
        State child = n.s.swapped(i);
        const double kv = curv_of(child, i);
        if (kv > limit) continue;
        emit(child, i, head);
        next.push_back({std::move(child), i});
        grew = true;
      }
    }
    frontier = std::move(next);
    if (!grew) break;
  }

  std::vector<std::vector<Out>> sinks(frontier.size());
  run_indexed(static_cast<int>(frontier.size()), threads, [&](int idx) {
    const Node& n = frontier[static_cast<std::size_t>(idx)];
    walk_subtree(n.s, n.last, limit, curv_of,
                 [&](const State& child, int i) { emit(child, i, sinks[static_cast<std::size_t>(idx)]); });
  });

  std::size_t total = head.size();
  for (const auto& s : sinks) total += s.size();
  std::vector<Out> out;
  out.reserve(total);
  out.insert(out.end(), head.begin(), head.end());
  for (auto& s : sinks) out.insert(out.end(), s.begin(), s.end());
  return out;
}

}  // namespace

geom::InversiveCircle dual_circle(const CirclesQuadrupleT<double>& q, int i) {
  geom::InversiveCircle d{};
  for (int j = 0; j < 4; ++j) {
    const double sign = (j == i) ? 1.0 : -1.0;
    d.cocurv += sign * q[j].cocurv;
    d.curv += sign * q[j].curv;
    d.cx += sign * q[j].cx;
    d.cy += sign * q[j].cy;
  }
  return {d.cocurv / 2.0, d.curv / 2.0, d.cx / 2.0, d.cy / 2.0};
}

geom::Point tangency_point(const geom::InversiveCircle& a, const geom::InversiveCircle& b) {
  const double s = a.curv + b.curv;
  if (std::abs(s) < 1e-14) return {0.0, 0.0, true};  // parallel lines touch at infinity
  return {(a.cx + b.cx) / s, (a.cy + b.cy) / s, false};
}

DescartesQuadruple bounded_root() { return {{-1, 2, 2, 3}}; }

CirclesQuadruple bounded_root_circles() {
  // Bounding unit circle, the two half circles at (+-1/2, 0), curvature 3 at
  // (0, 2/3). All coordinates integral.
  return {{{1, -1, 0, 0}, {0, 2, -1, 0}, {0, 2, 1, 0}, {1, 3, 0, 2}}};
}

CirclesQuadruple strip_root_circles() {
  // y=0 (interior below), y=2 (interior above), unit circles at (0,1), (2,1).
  return {{{0, 0, 0, -1}, {4, 0, 0, 1}, {0, 1, 0, 1}, {4, 1, 2, 1}}};
}

CirclesQuadrupleT<double> realize_root(const QuadrupleT<double>& q) {
  validate_bounded_root_d(q);
  QuadrupleT<double> s = q;
  std::sort(s.k.begin(), s.k.end());  // s.k[0] < 0 <= rest
  const double R = -1.0 / s.k[0];
  const double r2 = 1.0 / s.k[1];
  const double r3 = 1.0 / s.k[2];

  using C = std::complex<double>;
  const C z1(0.0, 0.0);
  const C z2(R - r2, 0.0);
  const double d = std::abs(z2 - z1);
  C z3;
  if (d < 1e-14) {
    // concentric is impossible for tangent circles; guarded by validation
    throw std::invalid_argument("degenerate root configuration");
  } else {
    const double x = (d * d + (R - r3) * (R - r3) - (r2 + r3) * (r2 + r3)) / (2.0 * d);
    const double y2 = (R - r3) * (R - r3) - x * x;
    z3 = C(x, std::sqrt(std::max(0.0, y2)));
  }

  const double k1 = s.k[0], k2 = s.k[1], k3 = s.k[2], k4 = s.k[3];
  const C lin = k1 * z1 + k2 * z2 + k3 * z3;
  const C rad = std::sqrt(k1 * k2 * z1 * z2 + k2 * k3 * z2 * z3 + k3 * k1 * z3 * z1);

  auto mk = [](double k, C z) { return geom::circle_from_center_radius(z.real(), z.imag(), k); };
  CirclesQuadrupleT<double> out{};
  out[0] = mk(k1, z1);
  out[1] = mk(k2, z2);
  out[2] = mk(k3, z3);
  for (const double sign : {1.0, -1.0}) {
    const C z4 = (lin + 2.0 * sign * rad) / k4;
    const geom::InversiveCircle c4 = mk(k4, z4);
    bool ok = true;
    for (int j = 0; j < 3; ++j) ok = ok && geom::is_externally_tangent(out[j], c4, 1e-7);
    if (ok) {
      out[3] = c4;
      return out;
    }
  }
  throw std::invalid_argument("could not realize fourth circle of the root");
}

std::vector<std::int64_t> enumerate_curvatures(const DescartesQuadruple& root, double T,
                                               const EnumerateOptions& opts) {
  validate_bounded_root(root);
  std::vector<std::int64_t> out;
  if (T <= 0.0) return out;
  for (std::int64_t k : root.k)
    if (k > 0 && static_cast<double>(k) <= T) out.push_back(k);

  auto curv_of = [](const KState& s, int i) { return static_cast<double>(s.q.k[i]); };
  auto emit = [](const KState& s, int i, std::vector<std::int64_t>& sink) {
    if (s.q.k[i] > 0) sink.push_back(s.q.k[i]);
  };
  auto body = walk_parallel<KState, decltype(curv_of), std::int64_t>(
      KState{root}, T, resolve_threads(opts.threads), curv_of, emit);
  out.insert(out.end(), body.begin(), body.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

template <class S>
std::vector<geom::InversiveCircleT<S>> enumerate_geometric_impl(const CirclesQuadrupleT<S>& root,
                                                                double T, int threads) {
  using Circle = geom::InversiveCircleT<S>;
  QuadrupleT<double> kq{};
  for (int i = 0; i < 4; ++i) kq.k[i] = static_cast<double>(root[i].curv);
  validate_bounded_root_d(kq);

  std::vector<Circle> out;
  if (T <= 0.0) return out;
  for (const Circle& c : root)
    if (c.curv > S(0) && static_cast<double>(c.curv) <= T) out.push_back(c);

  using State = std::conditional_t<std::is_same_v<S, std::int64_t>, CState64, CStateD>;
  auto curv_of = [](const State& s, int i) { return static_cast<double>(s.c[i].curv); };
  auto emit = [](const State& s, int i, std::vector<Circle>& sink) {
    if (s.c[i].curv > S(0)) sink.push_back(s.c[i]);
  };
  auto body = walk_parallel<State, decltype(curv_of), Circle>(State{root}, T, threads, curv_of, emit);
  out.insert(out.end(), body.begin(), body.end());
  std::sort(out.begin(), out.end(), [](const Circle& a, const Circle& b) {
    if (a.curv != b.curv) return a.curv < b.curv;
    if (a.cx != b.cx) return a.cx < b.cx;
    if (a.cy != b.cy) return a.cy < b.cy;
    return a.cocurv < b.cocurv;
  });
  return out;
}

}  // namespace

std::vector<geom::InversiveCircleT<std::int64_t>> enumerate_circles_geometric(
    const CirclesQuadruple& root, double T, const EnumerateOptions& opts) {
  return enumerate_geometric_impl<std::int64_t>(root, T, resolve_threads(opts.threads));
}

std::vector<geom::InversiveCircle> enumerate_circles_geometric(const CirclesQuadrupleT<double>& root,
                                                               double T, const EnumerateOptions& opts) {
  return enumerate_geometric_impl<double>(root, T, resolve_threads(opts.threads));
}

void for_each_tangency(const CirclesQuadruple& root, double T,
                       const std::function<void(const geom::Point&)>& fn) {
  auto to_double = [](const geom::InversiveCircleT<std::int64_t>& c) {
    return geom::InversiveCircle{static_cast<double>(c.cocurv), static_cast<double>(c.curv),
                                 static_cast<double>(c.cx), static_cast<double>(c.cy)};
  };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const geom::Point t = tangency_point(to_double(root[i]), to_double(root[j]));
      if (!t.at_infinity) fn(t);
    }

  auto curv_of = [](const CState64& s, int i) { return static_cast<double>(s.c[i].curv); };
  walk_subtree(CState64{root}, -1, T, curv_of, [&](const CState64& s, int i) {
    const geom::InversiveCircle born = to_double(s.c[i]);
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      const geom::Point t = tangency_point(born, to_double(s.c[j]));
      if (!t.at_infinity) fn(t);
    }
  });
}

CountProfile count_profile(const DescartesQuadruple& root, std::vector<double> thresholds,
                           const EnumerateOptions& opts) {
  validate_bounded_root(root);
  if (thresholds.empty()) throw std::invalid_argument("count_profile: no thresholds");
  std::sort(thresholds.begin(), thresholds.end());
  const double tmax = thresholds.back();

  // Histogram per bucket, then prefix sums. Buckets follow the sorted
  // thresholds; bucket b counts curvatures in (thresholds[b-1], thresholds[b]].
  auto bucket_of = [&](double k) {
    return static_cast<std::size_t>(
        std::lower_bound(thresholds.begin(), thresholds.end(), k) - thresholds.begin());
  };

  std::vector<std::int64_t> hist(thresholds.size(), 0);
  auto tally = [&](std::vector<std::int64_t>& h, std::int64_t k) {
    if (k > 0 && static_cast<double>(k) <= tmax) ++h[bucket_of(static_cast<double>(k))];
  };
  for (std::int64_t k : root.k) tally(hist, k);

  auto curv_of = [](const KState& s, int i) { return static_cast<double>(s.q.k[i]); };
  {
    struct Node {
      KState s;
      int last;
    };
    std::vector<Node> frontier{{KState{root}, -1}};
    const int threads = resolve_threads(opts.threads);
    const std::size_t want = static_cast<std::size_t>(8 * threads);
    for (int depth = 0; depth < 12 && frontier.size() < want; ++depth) {
      std::vector<Node> next;
      for (const Node& n : frontier)
        for (int i = 0; i < 4; ++i) {
          if (i == n.last) continue;
          KState child = n.s.swapped(i);
          if (static_cast<double>(child.q.k[i]) > tmax) continue;
          tally(hist, child.q.k[i]);
          next.push_back({child, i});
        }
      if (next.empty()) break;
      frontier = std::move(next);
    }
    std::vector<std::vector<std::int64_t>> parts(frontier.size(),
                                                 std::vector<std::int64_t>(thresholds.size(), 0));
    run_indexed(static_cast<int>(frontier.size()), threads, [&](int idx) {
      walk_subtree(frontier[static_cast<std::size_t>(idx)].s, frontier[static_cast<std::size_t>(idx)].last,
                   tmax, curv_of,
                   [&](const KState& child, int i) { tally(parts[static_cast<std::size_t>(idx)], child.q.k[i]); });
    });
    for (const auto& p : parts)
      for (std::size_t b = 0; b < hist.size(); ++b) hist[b] += p[b];
  }

  CountProfile profile;
  profile.root = root;
  profile.thresholds = thresholds;
  profile.counts.resize(thresholds.size());
  std::int64_t acc = 0;
  for (std::size_t b = 0; b < hist.size(); ++b) {
    acc += hist[b];
    profile.counts[b] = acc;
  }
  return profile;
}

GrowthFit fit_growth_exponent(const CountProfile& profile, double tmin) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < profile.thresholds.size(); ++i) {
    if (profile.thresholds[i] >= tmin && profile.counts[i] > 0) {
      xs.push_back(std::log(profile.thresholds[i]));
      ys.push_back(std::log(static_cast<double>(profile.counts[i])));
    }
  }
  const int n = static_cast<int>(xs.size());
  if (n < 5) throw std::invalid_argument("fit_growth_exponent: need at least 5 thresholds above tmin");

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
  if (sxx == 0.0) throw std::invalid_argument("fit_growth_exponent: degenerate threshold range");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - my - slope * (xs[i] - mx);
    rss += r * r;
  }
  const double se = (n > 2) ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return {slope, se, n};
}

}  // namespace specgap::packing
