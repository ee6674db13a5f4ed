#include "specgap/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specgap::spectral {

namespace {
constexpr double kBig = 1e30;
}

GeodesicWall GeodesicWall::vertical(double x, Side side, BoundaryCondition bc) {
  if (side != Side::left_of && side != Side::right_of)
    throw std::invalid_argument("vertical wall side must be left_of or right_of");
  GeodesicWall w;
  w.shape = Shape::vertical_line;
  w.c = x;
  w.side = side;
  w.bc = bc;
  return w;
}

GeodesicWall GeodesicWall::semicircle(double center, double radius, Side side, BoundaryCondition bc) {
  if (!(radius > 0.0)) throw std::invalid_argument("semicircle wall needs radius > 0");
  if (side != Side::inside && side != Side::outside)
    throw std::invalid_argument("semicircle wall side must be inside or outside");
  GeodesicWall w;
  w.shape = Shape::semicircle;
  w.c = center;
  w.r = radius;
  w.side = side;
  w.bc = bc;
  return w;
}

double GeodesicWall::constraint(double x, double y) const {
  if (shape == Shape::vertical_line) return side == Side::right_of ? x - c : c - x;
  const double d2 = (x - c) * (x - c) + y * y;
  return side == Side::outside ? d2 - r * r : r * r - d2;
}

double GeodesicWall::distance(double x, double y) const {
  if (shape == Shape::vertical_line) return std::abs(x - c);
  return std::abs(std::hypot(x - c, y) - r);
}

std::vector<Interval> HyperbolicDomain::xspan(double y) const {
  std::vector<Interval> spans{{-kBig, kBig}};
  auto intersect_halfline = [&](double lo, double hi) {
    std::vector<Interval> next;
    for (const Interval& s : spans) {
      const double a = std::max(s.lo, lo), b = std::min(s.hi, hi);
      if (a < b) next.push_back({a, b});
    }
    spans = std::move(next);
  };

  for (const GeodesicWall& w : walls) {
    if (w.shape == GeodesicWall::Shape::vertical_line) {
      if (w.side == GeodesicWall::Side::right_of)
        intersect_halfline(w.c, kBig);
      else
        intersect_halfline(-kBig, w.c);
      continue;
    }
    if (y >= w.r) {
      if (w.side == GeodesicWall::Side::inside) return {};
      continue;  // outside constraint vacuous above the circle
    }
    const double s = std::sqrt(w.r * w.r - y * y);
    if (w.side == GeodesicWall::Side::inside) {
      intersect_halfline(w.c - s, w.c + s);
    } else {
      // complement: split each span on (c-s, c+s)
      std::vector<Interval> next;
      for (const Interval& sp : spans) {
        if (sp.hi <= w.c - s || sp.lo >= w.c + s) {
          next.push_back(sp);
          continue;
        }
        if (sp.lo < w.c - s) next.push_back({sp.lo, w.c - s});
        if (sp.hi > w.c + s) next.push_back({w.c + s, sp.hi});
      }
      spans = std::move(next);
    }
    if (spans.empty()) return {};
  }
  std::sort(spans.begin(), spans.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return spans;
}

bool HyperbolicDomain::inside(double x, double y) const {
  if (y < trunc.eps || y > trunc.Y) return false;
  for (const GeodesicWall& w : walls)
    if (w.constraint(x, y) <= 0.0) return false;
  return true;
}

HyperbolicDomain HyperbolicDomain::with_truncation(double eps, double Y) const {
  HyperbolicDomain d = *this;
  d.trunc = {eps, Y};
  return d;
}

namespace {

double span_width(const HyperbolicDomain& d, double y) {
  double w = 0.0;
  for (const Interval& s : d.xspan(y)) {
    if (s.hi >= kBig || s.lo <= -kBig)
      throw std::invalid_argument("domain is unbounded in x at height " + std::to_string(y));
    w += s.width();
  }
  return w;
}

double adaptive_simpson(const HyperbolicDomain& d, double a, double b, double fa, double fm, double fb,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = span_width(d, lm) / (lm * lm);
  const double frm = span_width(d, rm) / (rm * rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(d, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
         adaptive_simpson(d, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

}  // namespace

double HyperbolicDomain::area(double tol) const {
  std::vector<double> cuts = event_heights(*this);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    const double fa = span_width(*this, a + 1e-14 * (b - a)) / (a * a);
    const double fb = span_width(*this, b - 1e-14 * (b - a)) / (b * b);
    const double m = 0.5 * (a + b);
    const double fm = span_width(*this, m) / (m * m);
    total += adaptive_simpson(*this, a, b, fa, fm, fb, tol, 48);
  }
  return total;
}

void HyperbolicDomain::validate() const {
  if (!(trunc.eps > 0.0) || !(trunc.Y > trunc.eps))
    throw std::invalid_argument("truncation must satisfy 0 < eps < Y");
  bool nonempty = false;
  const int samples = 64;
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double y = trunc.eps * std::pow(trunc.Y / trunc.eps, t);
    const auto spans = xspan(y);
    for (const Interval& s : spans) {
      if (s.hi >= kBig || s.lo <= -kBig)
        throw std::invalid_argument("walls leave the domain unbounded in x");
      if (s.width() > 0.0) nonempty = true;
    }
  }
  if (!nonempty) throw std::invalid_argument("walls bound an empty region");
}

std::vector<geom::Point> boundary_corners(const HyperbolicDomain& d) {
  std::vector<geom::Point> corners;
  const double eps = d.trunc.eps, Y = d.trunc.Y;

  auto on_boundary = [&](double x, double y) {
    if (y < eps - 1e-12 || y > Y + 1e-12) return false;
    for (const GeodesicWall& w : d.walls)
      if (w.constraint(x, y) < -1e-10) return false;
    return true;
  };
  auto push = [&](double x, double y) {
    if (!on_boundary(x, y)) return;
    for (const auto& p : corners)
      if (std::abs(p.x - x) < 1e-12 && std::abs(p.y - y) < 1e-12) return;
    corners.push_back({x, y, false});
  };

  const auto& ws = d.walls;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    // wall x truncation lines
    if (ws[i].shape == GeodesicWall::Shape::vertical_line) {
      push(ws[i].c, eps);
      push(ws[i].c, Y);
    } else {
      for (double yy : {eps, Y}) {
        if (yy < ws[i].r) {
          const double s = std::sqrt(ws[i].r * ws[i].r - yy * yy);
          push(ws[i].c - s, yy);
          push(ws[i].c + s, yy);
        }
      }
      if (ws[i].r >= eps && ws[i].r <= Y) push(ws[i].c, ws[i].r);  // apex
    }
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      const GeodesicWall &a = ws[i], &b = ws[j];
      if (a.shape == GeodesicWall::Shape::vertical_line && b.shape == GeodesicWall::Shape::vertical_line)
        continue;  // parallel
      if (a.shape != b.shape) {
        const GeodesicWall& line = a.shape == GeodesicWall::Shape::vertical_line ? a : b;
        const GeodesicWall& circ = a.shape == GeodesicWall::Shape::vertical_line ? b : a;
        const double dx = line.c - circ.c;
        if (std::abs(dx) <= circ.r) {
          const double y = std::sqrt(circ.r * circ.r - dx * dx);
          if (y > 0.0) push(line.c, y);
        }
      } else {
        const double dc = b.c - a.c;
        if (dc == 0.0) continue;
        const double x = (dc * dc + a.r * a.r - b.r * b.r) / (2.0 * dc) + a.c;
        const double y2 = a.r * a.r - (x - a.c) * (x - a.c);
        if (y2 > 0.0) push(x, std::sqrt(y2));
      }
    }
  }
  return corners;
}

std::vector<double> event_heights(const HyperbolicDomain& d) {
  std::vector<double> h{d.trunc.eps, d.trunc.Y};
  for (const GeodesicWall& w : d.walls)
    if (w.shape == GeodesicWall::Shape::semicircle) h.push_back(w.r);
  for (const auto& c : boundary_corners(d)) h.push_back(c.y);
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end(), [](double a, double b) { return std::abs(a - b) < 1e-13; }),
          h.end());
  std::erase_if(h, [&](double y) { return y < d.trunc.eps - 1e-13 || y > d.trunc.Y + 1e-13; });
  return h;
}

HyperbolicDomain hecke_D(double mu, Truncation t) {
  if (!(mu > 2.0)) throw std::invalid_argument("hecke_D: mu must exceed 2");
  HyperbolicDomain d;
  d.name = "hecke_D(mu=" + std::to_string(mu) + ")";
  d.walls = {GeodesicWall::vertical(0.0, GeodesicWall::Side::right_of),
             GeodesicWall::semicircle(0.0, 1.0, GeodesicWall::Side::outside),
             GeodesicWall::vertical(mu / 2.0, GeodesicWall::Side::left_of)};
  d.trunc = t;
  return d;
}

HyperbolicDomain hecke_D1(Truncation t) {
  HyperbolicDomain d;
  d.name = "hecke_D1";
  d.walls = {GeodesicWall::vertical(0.0, GeodesicWall::Side::right_of),
             GeodesicWall::semicircle(0.0, 1.0, GeodesicWall::Side::outside),
             GeodesicWall::vertical(1.0, GeodesicWall::Side::left_of)};
  d.trunc = t;
  return d;
}

HyperbolicDomain hecke_D2(double mu, Truncation t) {
  if (!(mu > 2.0)) throw std::invalid_argument("hecke_D2: mu must exceed 2");
  HyperbolicDomain d;
  d.name = "hecke_D2(mu=" + std::to_string(mu) + ")";
  d.walls = {GeodesicWall::vertical(1.0, GeodesicWall::Side::right_of),
             GeodesicWall::vertical(mu / 2.0, GeodesicWall::Side::left_of)};
  d.trunc = t;
  return d;
}

HyperbolicDomain strip_domain(double width, double L) {
  if (!(width > 0.0) || !(L > 0.0)) throw std::invalid_argument("strip_domain: width and L must be positive");
  HyperbolicDomain d;
  d.name = "strip(w=" + std::to_string(width) + ",L=" + std::to_string(L) + ")";
  d.walls = {GeodesicWall::vertical(0.0, GeodesicWall::Side::right_of),
             GeodesicWall::vertical(width, GeodesicWall::Side::left_of)};
  d.trunc = {1.0, std::exp(L)};
  return d;
}

}  // namespace specgap::spectral
