#include "specgap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace specgap::spectral {

namespace {

constexpr double kPi = 3.14159265358979323846;

double tri_area2(const std::array<double, 2>& a, const std::array<double, 2>& b,
                 const std::array<double, 2>& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

double min_angle_of(const std::array<double, 2>& a, const std::array<double, 2>& b,
                    const std::array<double, 2>& c) {
  const double la = std::hypot(c[0] - b[0], c[1] - b[1]);
  const double lb = std::hypot(c[0] - a[0], c[1] - a[1]);
  const double lc = std::hypot(b[0] - a[0], b[1] - a[1]);
  const double area2 = std::abs(tri_area2(a, b, c));
  if (la == 0.0 || lb == 0.0 || lc == 0.0) return 0.0;
  const double sa = area2 / (lb * lc), sb = area2 / (la * lc), sc = area2 / (la * lb);
  return std::asin(std::clamp(std::min({sa, sb, sc}), 0.0, 1.0));
}

// deterministic tiny jitter to break cocircular point patterns
double hash_jitter(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a * 0x9e3779b97f4a7c15ull + b * 0xc2b2ae3d27d4eb4full + 0x165667b19e3779f9ull;
  x ^= x >> 29;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 32;
  return (static_cast<double>(x & 0xffffffffull) / 4294967295.0) - 0.5;
}

// ---------------------------------------------------------------------------
// Incremental Delaunay triangulation (Bowyer-Watson with walk location).

class Delaunay {
 public:
  explicit Delaunay(const std::vector<std::array<double, 2>>& pts) : pts_(pts) {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& p : pts_) {
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    const double ext = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6}) * 64.0;
    super_ = {pts_.size(), pts_.size() + 1, pts_.size() + 2};
    all_ = pts_;
    all_.push_back({cx - 2.0 * ext, cy - ext});
    all_.push_back({cx + 2.0 * ext, cy - ext});
    all_.push_back({cx, cy + 2.0 * ext});
    tris_.push_back({{static_cast<int>(super_[0]), static_cast<int>(super_[1]), static_cast<int>(super_[2])},
                     {-1, -1, -1},
                     true});
    for (std::size_t i = 0; i < pts_.size(); ++i) insert(static_cast<int>(i));
  }

  /// Kept triangle list (super-triangle removed), CCW.
  std::vector<std::array<int, 3>> triangles() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris_) {
      if (!t.alive) continue;
      bool super = false;
      for (int v : t.v)
        if (static_cast<std::size_t>(v) >= pts_.size()) super = true;
      if (!super) out.push_back(t.v);
    }
    return out;
  }

 private:
  struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> n;  // neighbor across edge (v[i], v[i+1])
    bool alive = false;
  };

  static long double orient(const std::array<double, 2>& a, const std::array<double, 2>& b,
                            const std::array<double, 2>& c) {
    const long double abx = static_cast<long double>(b[0]) - a[0];
    const long double aby = static_cast<long double>(b[1]) - a[1];
    const long double acx = static_cast<long double>(c[0]) - a[0];
    const long double acy = static_cast<long double>(c[1]) - a[1];
    return abx * acy - aby * acx;
  }

  long double incircle(const Tri& t, const std::array<double, 2>& p) const {
    const auto& a = all_[static_cast<std::size_t>(t.v[0])];
    const auto& b = all_[static_cast<std::size_t>(t.v[1])];
    const auto& c = all_[static_cast<std::size_t>(t.v[2])];
    const long double ax = static_cast<long double>(a[0]) - p[0], ay = static_cast<long double>(a[1]) - p[1];
    const long double bx = static_cast<long double>(b[0]) - p[0], by = static_cast<long double>(b[1]) - p[1];
    const long double cx = static_cast<long double>(c[0]) - p[0], cy = static_cast<long double>(c[1]) - p[1];
    const long double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
  }

  int locate(const std::array<double, 2>& p) const {
    int cur = hint_;
    if (cur < 0 || !tris_[static_cast<std::size_t>(cur)].alive) {
      cur = -1;
      for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i)
        if (tris_[static_cast<std::size_t>(i)].alive) {
          cur = i;
          break;
        }
    }
    int steps = 0;
    const int max_steps = static_cast<int>(tris_.size()) + 16;
    while (steps++ < max_steps) {
      const Tri& t = tris_[static_cast<std::size_t>(cur)];
      bool moved = false;
      for (int e = 0; e < 3; ++e) {
        const auto& a = all_[static_cast<std::size_t>(t.v[e])];
        const auto& b = all_[static_cast<std::size_t>(t.v[(e + 1) % 3])];
        if (orient(a, b, p) < 0.0L) {
          const int nb = t.n[e];
          if (nb < 0) break;
          cur = nb;
          moved = true;
          break;
        }
      }
      if (!moved) return cur;
    }
    // walk failed (should not happen); fall back to scan
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i) {
      const Tri& t = tris_[static_cast<std::size_t>(i)];
      if (!t.alive) continue;
      bool in = true;
      for (int e = 0; e < 3 && in; ++e)
        in = orient(all_[static_cast<std::size_t>(t.v[e])], all_[static_cast<std::size_t>(t.v[(e + 1) % 3])], p) >= 0.0L;
      if (in) return i;
    }
    throw std::runtime_error("mesh: Delaunay point location failed");
  }

  void insert(int pi) {
    const auto& p = pts_[static_cast<std::size_t>(pi)];
    const int start = locate(p);

    // grow cavity of triangles whose circumcircle contains p
    ++epoch_;
    mark_.resize(tris_.size() + 8, 0);
    std::vector<int>& cavity = cavity_buf_;
    std::vector<int>& stack = stack_buf_;
    cavity.clear();
    stack.clear();
    stack.push_back(start);
    mark_[static_cast<std::size_t>(start)] = epoch_;
    while (!stack.empty()) {
      const int ti = stack.back();
      stack.pop_back();
      cavity.push_back(ti);
      const Tri t = tris_[static_cast<std::size_t>(ti)];
      for (int e = 0; e < 3; ++e) {
        const int nb = t.n[e];
        if (nb < 0 || mark_[static_cast<std::size_t>(nb)] == epoch_) continue;
        if (incircle(tris_[static_cast<std::size_t>(nb)], p) > 0.0L) {
          mark_[static_cast<std::size_t>(nb)] = epoch_;
          stack.push_back(nb);
        }
      }
    }

    // boundary of the cavity: directed edges (a, b) with outside neighbor
    struct BEdge {
      int a, b, outside;
    };
    std::vector<BEdge> rim;
    for (int ti : cavity) {
      const Tri& t = tris_[static_cast<std::size_t>(ti)];
      for (int e = 0; e < 3; ++e) {
        const int nb = t.n[e];
        if (nb >= 0 && mark_[static_cast<std::size_t>(nb)] == epoch_) continue;
        rim.push_back({t.v[e], t.v[(e + 1) % 3], nb});
      }
    }
    for (int ti : cavity) tris_[static_cast<std::size_t>(ti)].alive = false;

    // fan around p
    std::unordered_map<int, int> tri_of_start, tri_of_end;
    tri_of_start.reserve(rim.size() * 2);
    tri_of_end.reserve(rim.size() * 2);
    std::vector<int> created;
    created.reserve(rim.size());
    for (const BEdge& e : rim) {
      const int ti = static_cast<int>(tris_.size());
      tris_.push_back({{e.a, e.b, pi}, {e.outside, -1, -1}, true});
      if (e.outside >= 0) {
        Tri& out = tris_[static_cast<std::size_t>(e.outside)];
        for (int k = 0; k < 3; ++k)
          if (out.v[k] == e.b && out.v[(k + 1) % 3] == e.a) out.n[k] = ti;
      }
      tri_of_start[e.a] = ti;
      tri_of_end[e.b] = ti;
      created.push_back(ti);
    }
    for (int ti : created) {
      Tri& t = tris_[static_cast<std::size_t>(ti)];
      t.n[1] = tri_of_start[t.v[1]];  // edge (b, p) meets the fan triangle starting at b
      t.n[2] = tri_of_end[t.v[0]];    // edge (p, a) meets the fan triangle ending at a
    }
    hint_ = created.empty() ? hint_ : created.back();
  }

  const std::vector<std::array<double, 2>>& pts_;
  std::vector<std::array<double, 2>> all_;
  std::array<std::size_t, 3> super_{};
  std::vector<Tri> tris_;
  std::vector<int> mark_;
  std::vector<int> cavity_buf_, stack_buf_;
  int epoch_ = 0;
  int hint_ = 0;
};

// ---------------------------------------------------------------------------
// Boundary sampling

struct BoundarySet {
  std::vector<std::array<double, 2>> points;
  std::vector<std::vector<int>> provenance;             // wall ids; -1 for truncation
  std::vector<std::array<int, 2>> segments;             // indices into points
  std::vector<int> segment_tag;
};

// gap between span endpoints at height y that involve x (the wall position);
// limits sampling spacing inside narrowing slivers
double local_gap(const HyperbolicDomain& d, double x, double y) {
  double gap = std::numeric_limits<double>::infinity();
  for (const Interval& s : d.xspan(y)) {
    if (std::abs(s.lo - x) < 1e-9 || std::abs(s.hi - x) < 1e-9) gap = std::min(gap, s.width());
  }
  return gap;
}

bool on_domain_boundary(const HyperbolicDomain& d, double x, double y, int skip_wall) {
  if (y < d.trunc.eps - 1e-12 || y > d.trunc.Y + 1e-12) return false;
  for (std::size_t i = 0; i < d.walls.size(); ++i) {
    if (static_cast<int>(i) == skip_wall) continue;
    if (d.walls[i].constraint(x, y) < -1e-10) return false;
  }
  return true;
}

// weld key: boundary points closer than ~1e-12 are the same geometric point
// (distinct samples are separated by far more)
using WeldKey = std::pair<std::int64_t, std::int64_t>;
using WeldIndex = std::map<WeldKey, int>;

WeldKey weld_key(double x, double y) {
  return {static_cast<std::int64_t>(std::llround(x * 1e12)),
          static_cast<std::int64_t>(std::llround(y * 1e12))};
}

int add_point(BoundarySet& bs, WeldIndex& index, double x, double y, int tag) {
  const WeldKey key = weld_key(x, y);
  auto it = index.find(key);
  if (it == index.end()) {
    const int id = static_cast<int>(bs.points.size());
    bs.points.push_back({x, y});
    bs.provenance.push_back({tag});
    index.emplace(key, id);
    return id;
  }
  auto& prov = bs.provenance[static_cast<std::size_t>(it->second)];
  if (std::find(prov.begin(), prov.end(), tag) == prov.end()) prov.push_back(tag);
  return it->second;
}

BoundarySet sample_boundary(const HyperbolicDomain& d, double h) {
  BoundarySet bs;
  WeldIndex index;
  const double eps = d.trunc.eps, Y = d.trunc.Y;
  const auto corners = boundary_corners(d);

  auto spacing_at = [&](double x, double y) {
    const double gap = local_gap(d, x, y);
    double s = h * y;
    if (gap < s) s = std::max(gap, 0.02 * h * eps);
    return s;
  };

  // walls
  for (std::size_t wi = 0; wi < d.walls.size(); ++wi) {
    const GeodesicWall& w = d.walls[wi];
    const int tag = static_cast<int>(wi);

    // parameter: y for lines, angle for circles
    auto param_of = [&](double x, double y) {
      return w.shape == GeodesicWall::Shape::vertical_line ? y : std::atan2(y, x - w.c);
    };
    auto point_of = [&](double t) {
      if (w.shape == GeodesicWall::Shape::vertical_line) return std::array<double, 2>{w.c, t};
      return std::array<double, 2>{w.c + w.r * std::cos(t), w.r * std::sin(t)};
    };

    std::vector<double> params;
    if (w.shape == GeodesicWall::Shape::vertical_line) {
      params = {eps, Y};
    } else {
      if (w.r <= eps) continue;  // wall fully below the truncation
      const double t_lo = std::asin(std::min(1.0, eps / w.r));
      params = {t_lo, kPi - t_lo};
      if (w.r > Y) {
        const double t_hi = std::asin(std::min(1.0, Y / w.r));
        params = {t_lo, t_hi, kPi - t_hi, kPi - t_lo};
      }
    }
    for (const auto& c : corners) {
      if (w.distance(c.x, c.y) < 1e-10) params.push_back(param_of(c.x, c.y));
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 params.end());

    for (std::size_t pi = 0; pi + 1 < params.size(); ++pi) {
      const double t0 = params[pi], t1 = params[pi + 1];
      const auto mid = point_of(0.5 * (t0 + t1));
      if (!on_domain_boundary(d, mid[0], mid[1], static_cast<int>(wi))) continue;
      if (w.shape == GeodesicWall::Shape::semicircle && (mid[1] < eps - 1e-12 || mid[1] > Y + 1e-12))
        continue;

      std::vector<int> chain;
      const auto p0 = point_of(t0);
      chain.push_back(add_point(bs, index, p0[0], p0[1], tag));
      double t = t0;
      while (true) {
        const auto p = point_of(t);
        double step = spacing_at(p[0], p[1]);
        if (w.shape == GeodesicWall::Shape::semicircle) step /= w.r;  // arc length to angle
        double tn = t + step;
        const auto pn_probe = point_of(std::min(tn, t1));
        const double step_next = spacing_at(pn_probe[0], pn_probe[1]) /
                                 (w.shape == GeodesicWall::Shape::semicircle ? w.r : 1.0);
        if (tn >= t1 - 0.55 * step_next) break;
        const auto pn = point_of(tn);
        chain.push_back(add_point(bs, index, pn[0], pn[1], tag));
        t = tn;
      }
      const auto p1 = point_of(t1);
      chain.push_back(add_point(bs, index, p1[0], p1[1], tag));
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        bs.segments.push_back({chain[i], chain[i + 1]});
        bs.segment_tag.push_back(tag);
      }
    }
  }

  // truncation lines
  for (const double ylevel : {eps, Y}) {
    const auto spans = d.xspan(ylevel);
    for (const Interval& s : spans) {
      if (!(s.width() > 0.0)) continue;
      std::vector<int> chain;
      chain.push_back(add_point(bs, index, s.lo, ylevel, Mesh::kTruncationTag));
      double x = s.lo;
      while (true) {
        const double step = h * ylevel;
        const double xn = x + step;
        if (xn >= s.hi - 0.55 * step) break;
        chain.push_back(add_point(bs, index, xn, ylevel, Mesh::kTruncationTag));
        x = xn;
      }
      chain.push_back(add_point(bs, index, s.hi, ylevel, Mesh::kTruncationTag));
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        bs.segments.push_back({chain[i], chain[i + 1]});
        bs.segment_tag.push_back(Mesh::kTruncationTag);
      }
    }
  }
  return bs;
}

std::vector<std::array<double, 2>> interior_cloud(const HyperbolicDomain& d, double h) {
  std::vector<std::array<double, 2>> pts;
  const double eps = d.trunc.eps, Y = d.trunc.Y;
  double y = eps * (1.0 + 0.85 * h);
  std::size_t row = 0;
  while (y < Y * (1.0 - 0.45 * h)) {
    const double ell = h * y;
    for (const Interval& s : d.xspan(y)) {
      const double inset = 0.65 * ell;
      const double usable = s.width() - 2.0 * inset;
      if (usable <= 0.0) continue;
      const int n = std::max(1, static_cast<int>(std::floor(usable / ell)) + 1);
      const double dx = usable / n;
      for (int j = 0; j <= n; ++j) {
        double px = s.lo + inset + j * dx;
        double py = y;
        px += 0.06 * ell * hash_jitter(row, static_cast<std::uint64_t>(j) * 2 + 1);
        py += 0.06 * ell * hash_jitter(row, static_cast<std::uint64_t>(j) * 2);
        bool ok = py > eps + 0.5 * h * eps && py < Y - 0.35 * h * Y;
        for (const GeodesicWall& w : d.walls) {
          if (!ok) break;
          ok = w.constraint(px, py) > 0.0 && w.distance(px, py) > 0.5 * ell;
        }
        if (ok) pts.push_back({px, py});
      }
    }
    y *= 1.0 + h;
    ++row;
  }
  return pts;
}

}  // namespace

double Mesh::triangle_area(int t) const {
  const auto& tr = triangles[static_cast<std::size_t>(t)];
  return 0.5 * tri_area2(vertices[static_cast<std::size_t>(tr[0])], vertices[static_cast<std::size_t>(tr[1])],
                         vertices[static_cast<std::size_t>(tr[2])]);
}

double Mesh::min_angle_deg() const {
  double best = 90.0;
  for (const auto& t : triangles) {
    const double a = min_angle_of(vertices[static_cast<std::size_t>(t[0])], vertices[static_cast<std::size_t>(t[1])],
                                  vertices[static_cast<std::size_t>(t[2])]) *
                     180.0 / kPi;
    best = std::min(best, a);
  }
  return best;
}

bool Mesh::vertex_on_boundary(int v) const { return on_boundary_[static_cast<std::size_t>(v)] != 0; }

Mesh build_mesh(const HyperbolicDomain& domain, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("build_mesh: h must be positive");
  domain.validate();

  BoundarySet bs = sample_boundary(domain, h);
  if (bs.segments.size() < 3) throw std::invalid_argument("build_mesh: h too coarse for this domain");

  std::vector<std::array<double, 2>> extra_interior;
  int quality_rounds = 0;
  for (int round = 0; round < 8; ++round) {
    std::vector<std::array<double, 2>> pts = bs.points;
    for (const auto& p : interior_cloud(domain, h)) pts.push_back(p);
    for (const auto& p : extra_interior) pts.push_back(p);

    Delaunay dt(pts);
    auto tris = dt.triangles();

    // keep triangles whose centroid lies in the domain
    std::vector<std::array<int, 3>> kept;
    kept.reserve(tris.size());
    for (const auto& t : tris) {
      const double cx = (pts[static_cast<std::size_t>(t[0])][0] + pts[static_cast<std::size_t>(t[1])][0] +
                         pts[static_cast<std::size_t>(t[2])][0]) /
                        3.0;
      const double cy = (pts[static_cast<std::size_t>(t[0])][1] + pts[static_cast<std::size_t>(t[1])][1] +
                         pts[static_cast<std::size_t>(t[2])][1]) /
                        3.0;
      if (domain.inside(cx, cy)) kept.push_back(t);
    }
    if (kept.empty()) throw std::invalid_argument("build_mesh: h too coarse for this domain");

    // all prescribed boundary segments must appear as mesh edges
    std::unordered_set<std::uint64_t> edges;
    auto ekey = [](int a, int b) {
      if (a > b) std::swap(a, b);
      return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
             static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
    };
    for (const auto& t : kept)
      for (int e = 0; e < 3; ++e) edges.insert(ekey(t[e], t[(e + 1) % 3]));

    std::vector<std::size_t> missing;
    for (std::size_t si = 0; si < bs.segments.size(); ++si)
      if (!edges.count(ekey(bs.segments[si][0], bs.segments[si][1]))) missing.push_back(si);

    if (!missing.empty()) {
      if (round == 7) throw std::runtime_error("build_mesh: could not recover boundary segments");
      // split each missing segment at its midpoint and retry
      WeldIndex index;
      for (std::size_t i = 0; i < bs.points.size(); ++i)
        index.emplace(weld_key(bs.points[i][0], bs.points[i][1]), static_cast<int>(i));
      for (std::size_t si : missing) {
        const auto seg = bs.segments[si];
        const int tag = bs.segment_tag[si];
        const auto& p0 = bs.points[static_cast<std::size_t>(seg[0])];
        const auto& p1 = bs.points[static_cast<std::size_t>(seg[1])];
        double mx = 0.5 * (p0[0] + p1[0]), my = 0.5 * (p0[1] + p1[1]);
        if (tag >= 0) {
          const GeodesicWall& w = domain.walls[static_cast<std::size_t>(tag)];
          if (w.shape == GeodesicWall::Shape::semicircle) {  // project back to the arc
            const double a = std::atan2(my, mx - w.c);
            mx = w.c + w.r * std::cos(a);
            my = w.r * std::sin(a);
          }
        }
        const int mid = add_point(bs, index, mx, my, tag);
        bs.segments[si] = {seg[0], mid};
        bs.segments.push_back({mid, seg[1]});
        bs.segment_tag.push_back(tag);
      }
      continue;
    }

    // assemble the Mesh: drop unused points, orient CCW
    std::vector<int> remap(pts.size(), -1);
    Mesh mesh;
    mesh.target_h = h;
    mesh.trunc = domain.trunc;
    for (const GeodesicWall& w : domain.walls) mesh.wall_bcs.push_back(w.bc);
    auto use = [&](int v) {
      if (remap[static_cast<std::size_t>(v)] < 0) {
        remap[static_cast<std::size_t>(v)] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(pts[static_cast<std::size_t>(v)]);
      }
      return remap[static_cast<std::size_t>(v)];
    };
    for (auto t : kept) {
      if (tri_area2(pts[static_cast<std::size_t>(t[0])], pts[static_cast<std::size_t>(t[1])],
                    pts[static_cast<std::size_t>(t[2])]) < 0.0)
        std::swap(t[1], t[2]);
      mesh.triangles.push_back({use(t[0]), use(t[1]), use(t[2])});
    }

    std::unordered_map<std::uint64_t, int> seg_tags;
    for (std::size_t si = 0; si < bs.segments.size(); ++si) {
      const int a = remap[static_cast<std::size_t>(bs.segments[si][0])];
      const int b = remap[static_cast<std::size_t>(bs.segments[si][1])];
      if (a < 0 || b < 0) continue;
      seg_tags.emplace(ekey(a, b), bs.segment_tag[si]);
    }

    // boundary edges = edges with exactly one incident triangle
    std::unordered_map<std::uint64_t, int> edge_count;
    for (const auto& t : mesh.triangles)
      for (int e = 0; e < 3; ++e) ++edge_count[ekey(t[e], t[(e + 1) % 3])];
    mesh.on_boundary_.assign(mesh.vertices.size(), 0);
    for (const auto& [key, cnt] : edge_count) {
      if (cnt != 1) continue;
      const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffull);
      auto it = seg_tags.find(key);
      if (it == seg_tags.end())
        throw std::runtime_error("build_mesh: boundary edge without provenance");
      mesh.boundary_edges.push_back({a, b, it->second});
      mesh.on_boundary_[static_cast<std::size_t>(a)] = 1;
      mesh.on_boundary_[static_cast<std::size_t>(b)] = 1;
    }

    // connectivity
    {
      std::vector<int> parent(mesh.vertices.size());
      for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
      std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
          parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
          x = parent[static_cast<std::size_t>(x)];
        }
        return x;
      };
      for (const auto& t : mesh.triangles) {
        parent[static_cast<std::size_t>(find(t[1]))] = find(t[0]);
        parent[static_cast<std::size_t>(find(t[2]))] = find(t[0]);
      }
      const int root = find(0);
      for (std::size_t i = 0; i < parent.size(); ++i)
        if (find(static_cast<int>(i)) != root)
          throw std::invalid_argument("build_mesh: domain disconnected at this resolution");
    }

    // quality pass: guarded smoothing of interior vertices interleaved with
    // local edge flips toward the min-angle-optimal triangulation
    {
      std::unordered_set<std::uint64_t> protected_edges;
      for (const auto& [key, tag] : seg_tags) protected_edges.insert(key);

      auto vtx = [&](int v) -> const std::array<double, 2>& {
        return mesh.vertices[static_cast<std::size_t>(v)];
      };
      auto angle_of_tri = [&](const std::array<int, 3>& t) {
        return min_angle_of(vtx(t[0]), vtx(t[1]), vtx(t[2]));
      };

      auto smooth_pass = [&] {
        std::vector<std::vector<int>> star(mesh.vertices.size());
        for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti)
          for (int v : mesh.triangles[ti]) star[static_cast<std::size_t>(v)].push_back(static_cast<int>(ti));
        auto local_quality = [&](int v) {
          double q = 1e9;
          for (int ti : star[static_cast<std::size_t>(v)]) {
            const auto& t = mesh.triangles[static_cast<std::size_t>(ti)];
            if (tri_area2(vtx(t[0]), vtx(t[1]), vtx(t[2])) <= 0.0) return -1.0;
            q = std::min(q, angle_of_tri(t));
          }
          return q;
        };
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
          if (mesh.on_boundary_[v] || star[v].empty()) continue;
          double cx = 0.0, cy = 0.0;
          int cnt = 0;
          for (int ti : star[v])
            for (int u : mesh.triangles[static_cast<std::size_t>(ti)])
              if (u != static_cast<int>(v)) {
                cx += vtx(u)[0];
                cy += vtx(u)[1];
                ++cnt;
              }
          cx /= cnt;
          cy /= cnt;
          const auto old = mesh.vertices[v];
          // allow escapes but not new encroachment on walls or cuts
          auto clearance = [&](double px, double py) {
            double c = std::min(py - domain.trunc.eps, domain.trunc.Y - py);
            for (const GeodesicWall& w : domain.walls) c = std::min(c, w.distance(px, py));
            return c;
          };
          const double ell = h * cy;
          if (clearance(cx, cy) < 0.4 * ell && clearance(cx, cy) < clearance(old[0], old[1]))
            continue;
          const double before = local_quality(static_cast<int>(v));
          mesh.vertices[v] = {cx, cy};
          if (local_quality(static_cast<int>(v)) <= before) mesh.vertices[v] = old;
        }
      };

      auto flip_pass = [&]() -> int {
        struct Side {
          int tri, slot;
        };
        std::unordered_map<std::uint64_t, std::vector<Side>> adj;
        adj.reserve(mesh.triangles.size() * 2);
        for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
          const auto& t = mesh.triangles[ti];
          for (int e = 0; e < 3; ++e)
            adj[ekey(t[e], t[(e + 1) % 3])].push_back({static_cast<int>(ti), e});
        }
        std::vector<char> dirty(mesh.triangles.size(), 0);
        int flips = 0;
        for (const auto& [key, sides] : adj) {
          if (sides.size() != 2 || protected_edges.count(key)) continue;
          if (dirty[static_cast<std::size_t>(sides[0].tri)] || dirty[static_cast<std::size_t>(sides[1].tri)])
            continue;
          auto& t1 = mesh.triangles[static_cast<std::size_t>(sides[0].tri)];
          auto& t2 = mesh.triangles[static_cast<std::size_t>(sides[1].tri)];
          const int a = t1[sides[0].slot], b = t1[(sides[0].slot + 1) % 3];
          const int c = t1[(sides[0].slot + 2) % 3];
          // apex of the neighbor across (b, a)
          int d = -1;
          for (int e = 0; e < 3; ++e)
            if (t2[e] == b && t2[(e + 1) % 3] == a) d = t2[(e + 2) % 3];
          if (d < 0) continue;
          const double before = std::min(angle_of_tri(t1), angle_of_tri(t2));
          const std::array<int, 3> n1{a, d, c}, n2{d, b, c};
          if (tri_area2(vtx(a), vtx(d), vtx(c)) <= 0.0 || tri_area2(vtx(d), vtx(b), vtx(c)) <= 0.0)
            continue;
          const double after = std::min(angle_of_tri(n1), angle_of_tri(n2));
          if (after <= before + 1e-14) continue;
          t1 = n1;
          t2 = n2;
          dirty[static_cast<std::size_t>(sides[0].tri)] = dirty[static_cast<std::size_t>(sides[1].tri)] = 1;
          ++flips;
        }
        return flips;
      };

      for (int pass = 0; pass < 3; ++pass) {
        smooth_pass();
        for (int sweep = 0; sweep < 8; ++sweep)
          if (flip_pass() == 0) break;
      }
    }

    // refinement: split the circumcircles of any remaining bad triangles
    if (quality_rounds < 3) {
      bool refined = false;
      for (const auto& t : mesh.triangles) {
        const auto &a = mesh.vertices[static_cast<std::size_t>(t[0])],
                   &b = mesh.vertices[static_cast<std::size_t>(t[1])],
                   &c = mesh.vertices[static_cast<std::size_t>(t[2])];
        if (min_angle_of(a, b, c) * 180.0 / kPi >= 20.0) continue;
        // circumcenter
        const double d = 2.0 * ((a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]));
        if (d == 0.0) continue;
        const double a2 = a[0] * a[0] + a[1] * a[1], b2 = b[0] * b[0] + b[1] * b[1],
                     c2 = c[0] * c[0] + c[1] * c[1];
        const double ux = ((a2 - c2) * (b[1] - c[1]) - (b2 - c2) * (a[1] - c[1])) / d;
        const double uy = ((b2 - c2) * (a[0] - c[0]) - (a2 - c2) * (b[0] - c[0])) / d;
        if (!domain.inside(ux, uy)) continue;
        double clear = std::min(uy - domain.trunc.eps, domain.trunc.Y - uy);
        for (const GeodesicWall& w : domain.walls) clear = std::min(clear, w.distance(ux, uy));
        if (clear < 0.3 * h * uy) continue;
        extra_interior.push_back({ux, uy});
        refined = true;
      }
      if (refined) {
        ++quality_rounds;
        continue;
      }
    }

    return mesh;
  }
  throw std::runtime_error("build_mesh: unreachable");
}

}  // namespace specgap::spectral
