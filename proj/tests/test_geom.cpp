#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "specgap/geom.hpp"
#include "specgap/packing.hpp"

using namespace specgap;
using geom::InversiveCircle;
using geom::Point;

namespace {

InversiveCircle unit_circle() { return geom::circle_from_center_radius(0.0, 0.0, 1.0); }

// geometric classification from centers and radii, used as an oracle for the
// algebraic pairing
geom::PairClass classify_by_geometry(double x1, double y1, double r1, double x2, double y2,
                                     double r2) {
  const double d = std::hypot(x1 - x2, y1 - y2);
  const double tol = 1e-9;
  if (std::abs(d - (r1 + r2)) < tol) return geom::PairClass::externally_tangent;
  if (std::abs(d - std::abs(r1 - r2)) < tol) return geom::PairClass::internally_tangent;
  if (d > r1 + r2) return geom::PairClass::disjoint;
  if (d < std::abs(r1 - r2)) return geom::PairClass::nested;
  return geom::PairClass::intersecting;
}

}  // namespace

TEST_CASE("inversive product basics") {
  const auto c = unit_circle();
  CHECK(geom::inversive_product(c, c) == doctest::Approx(1.0).epsilon(1e-14));

  const auto c2 = geom::circle_from_center_radius(2.0, 0.0, 1.0);
  CHECK(geom::inversive_product(c, c2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(geom::is_externally_tangent(c, c2));
  CHECK(classify_by_geometry(0, 0, 1, 2, 0, 1) == geom::PairClass::externally_tangent);
}

TEST_CASE("concentric circles pair by the closed form and classify as nested") {
  const auto inner = unit_circle();
  const auto outer = geom::circle_from_center_radius(0.0, 0.0, 0.5);  // radius 2
  // closed form for positively oriented circles: (r1^2 + r2^2 - d^2)/(2 r1 r2)
  const double expected = (1.0 + 4.0 - 0.0) / (2.0 * 1.0 * 2.0);
  CHECK(geom::inversive_product(inner, outer) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(geom::classify_pair(inner, outer) == geom::PairClass::nested);
  CHECK(classify_by_geometry(0, 0, 1, 0, 0, 2) == geom::PairClass::nested);
}

TEST_CASE("pairing agrees with geometric classification on random pairs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), rad(0.1, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double x1 = pos(rng), y1 = pos(rng), r1 = rad(rng);
    const double x2 = pos(rng), y2 = pos(rng), r2 = rad(rng);
    const auto a = geom::circle_from_center_radius(x1, y1, 1.0 / r1);
    const auto b = geom::circle_from_center_radius(x2, y2, 1.0 / r2);
    const auto want = classify_by_geometry(x1, y1, r1, x2, y2, r2);
    // skip numerically borderline configurations
    const double d = std::hypot(x1 - x2, y1 - y2);
    if (std::abs(d - (r1 + r2)) < 1e-7 || std::abs(d - std::abs(r1 - r2)) < 1e-7) continue;
    CHECK(geom::classify_pair(a, b) == want);
  }
}

TEST_CASE("reflect_point examples") {
  const auto yaxis = geom::line_from_normal_offset(1.0, 0.0, 0.0);
  const Point p = geom::reflect_point(yaxis, {3.0, 1.0});
  CHECK(p.x == doctest::Approx(-3.0));
  CHECK(p.y == doctest::Approx(1.0));

  const Point q = geom::reflect_point(unit_circle(), {0.0, 2.0});
  CHECK(q.x == doctest::Approx(0.0));
  CHECK(q.y == doctest::Approx(0.5));

  // involution oracle for a generic mirror
  const auto mirror = geom::circle_from_center_radius(1.0, 0.0, 2.0);
  const Point v{1.0, 1.0};
  const Point back = geom::reflect_point(mirror, geom::reflect_point(mirror, v));
  CHECK(back.x == doctest::Approx(v.x).epsilon(1e-12));
  CHECK(back.y == doctest::Approx(v.y).epsilon(1e-12));

  CHECK_THROWS_AS((void)geom::reflect_point(mirror, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("reflect_circle examples") {
  const auto mirror = geom::line_from_normal_offset(1.0, 0.0, 1.0);  // x = 1
  const auto image = geom::reflect_circle(mirror, unit_circle());
  CHECK(image.curv == doctest::Approx(1.0));
  CHECK(geom::center_of(image).x == doctest::Approx(2.0));
  CHECK(geom::center_of(image).y == doctest::Approx(0.0));

  // a circle reflected in itself comes back orientation-flipped
  const auto c = unit_circle();
  const auto self = geom::reflect_circle(c, c);
  CHECK(self.curv == doctest::Approx(-c.curv));
  CHECK(self.cocurv == doctest::Approx(-c.cocurv));
}

TEST_CASE("strip wall configuration: first generation from the root quadruple") {
  // Two parallel lines and two unit circles tangent to both, with the dual
  // circles as reflection walls. Swapping each root circle through its dual
  // produces the first generation; every new circle is tangent to the three
  // it was built from.
  const auto root = packing::strip_root_circles();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(geom::doubled_inversive_product(root[i], root[j]) == -2);

  std::vector<std::int64_t> new_curvatures;
  for (int i = 0; i < 4; ++i) {
    const auto gen = packing::swap_circles(root, i);
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      CHECK(geom::doubled_inversive_product(gen[i], gen[j]) == -2);  // externally tangent
    }
    // the new circle is the reflection of the old through the dual mirror
    packing::CirclesQuadrupleT<double> rootd;
    for (int k = 0; k < 4; ++k)
      rootd[k] = {static_cast<double>(root[k].cocurv), static_cast<double>(root[k].curv),
                  static_cast<double>(root[k].cx), static_cast<double>(root[k].cy)};
    const auto dual = packing::dual_circle(rootd, i);
    const auto reflected = geom::reflect_circle(dual, rootd[i]);
    CHECK(reflected.curv == doctest::Approx(static_cast<double>(gen[i].curv)).epsilon(1e-12));
    CHECK(reflected.cx == doctest::Approx(static_cast<double>(gen[i].cx)).epsilon(1e-12));
    new_curvatures.push_back(gen[i].curv);
  }
  std::sort(new_curvatures.begin(), new_curvatures.end());
  CHECK(new_curvatures == std::vector<std::int64_t>{1, 1, 4, 4});
}

TEST_CASE("strip wall configuration: packing circle meets every wall cleanly") {
  // Structure check: the distinguished circle meets each reflection wall
  // tangentially, orthogonally, or not at all; the walls themselves are
  // mutually tangent.
  const auto root = packing::strip_root_circles();
  packing::CirclesQuadrupleT<double> rootd;
  for (int k = 0; k < 4; ++k)
    rootd[k] = {static_cast<double>(root[k].cocurv), static_cast<double>(root[k].curv),
                static_cast<double>(root[k].cx), static_cast<double>(root[k].cy)};
  std::array<InversiveCircle, 4> duals;
  for (int i = 0; i < 4; ++i) duals[i] = packing::dual_circle(rootd, i);

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(std::abs(geom::inversive_product(duals[i], duals[j])) == doctest::Approx(1.0));

  const auto& w0 = rootd[0];  // the line y = 0, a circle of the packing
  int tangent_or_orth = 0, disjoint = 0;
  for (int i = 0; i < 4; ++i) {
    const double p = geom::inversive_product(w0, duals[i]);
    if (std::abs(p) < 1e-12 || std::abs(std::abs(p) - 1.0) < 1e-12)
      ++tangent_or_orth;
    else if (std::abs(p) > 1.0)
      ++disjoint;
  }
  CHECK(tangent_or_orth + disjoint == 4);
}

TEST_CASE("mobius examples and composition") {
  using geom::Mobius;
  const Point p{0.4, 1.3};
  const Point idp = geom::apply_mobius(Mobius::identity(), p);
  CHECK(idp.x == doctest::Approx(p.x));
  CHECK(idp.y == doctest::Approx(p.y));

  const Point tr = geom::apply_mobius(Mobius::translation(3.0), {0.0, 1.0});
  CHECK(tr.x == doctest::Approx(3.0));
  CHECK(tr.y == doctest::Approx(1.0));

  const Point inv = geom::apply_mobius(Mobius::inversion(), {0.0, 2.0});
  CHECK(inv.x == doctest::Approx(0.0));
  CHECK(inv.y == doctest::Approx(0.5));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    Mobius m1{uni(rng), uni(rng), uni(rng), uni(rng)};
    Mobius m2{uni(rng), uni(rng), uni(rng), uni(rng)};
    if (m1.det() <= 0.1 || m2.det() <= 0.1) continue;
    m1 = m1.normalized();
    m2 = m2.normalized();
    const Point q{uni(rng), std::abs(uni(rng)) + 0.1};
    const Point a = geom::apply_mobius(m1 * m2, q);
    const Point b = geom::apply_mobius(m1, geom::apply_mobius(m2, q));
    CHECK(a.x == doctest::Approx(b.x).epsilon(1e-9));
    CHECK(a.y == doctest::Approx(b.y).epsilon(1e-9));
  }

  const Point pole = geom::apply_mobius(Mobius::inversion(), {0.0, 0.0});
  CHECK(pole.at_infinity);
}

TEST_CASE("mobius maps preserve hyperbolic distance") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    geom::Mobius m{uni(rng), uni(rng), uni(rng), uni(rng)};
    if (std::abs(m.det()) <= 0.05) continue;
    m = m.normalized();
    const Point z{uni(rng), std::abs(uni(rng)) + 0.05};
    const Point w{uni(rng), std::abs(uni(rng)) + 0.05};
    const Point mz = geom::apply_mobius(m, z), mw = geom::apply_mobius(m, w);
    if (mz.at_infinity || mw.at_infinity) continue;
    CHECK(geom::hyperbolic_distance(z, w) ==
          doctest::Approx(geom::hyperbolic_distance(mz, mw)).epsilon(1e-12));
  }
}

TEST_CASE("property: reflections preserve the pairing and are involutions" *
          doctest::description("1e5 random mirror/circle pairs")) {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> pos(-4.0, 4.0), rad(0.05, 3.0);
  auto random_circle = [&] {
    return geom::circle_from_center_radius(pos(rng), pos(rng), 1.0 / rad(rng));
  };
  for (int i = 0; i < 100000; ++i) {
    const auto mirror = random_circle();
    const auto c1 = random_circle();
    const auto c2 = random_circle();
    const auto r1 = geom::reflect_circle(mirror, c1);
    const auto r2 = geom::reflect_circle(mirror, c2);
    const auto back = geom::reflect_circle(mirror, r1);
    // error scale: intermediate coordinates grow like the reflected circle's
    const double scale = std::max({1.0, std::abs(r1.cocurv), std::abs(r1.curv), std::abs(r1.cx),
                                   std::abs(r1.cy)});
    REQUIRE(std::abs(back.curv - c1.curv) < 1e-10 * scale);
    REQUIRE(std::abs(back.cx - c1.cx) < 1e-10 * scale);
    REQUIRE(std::abs(back.cy - c1.cy) < 1e-10 * scale);
    REQUIRE(std::abs(back.cocurv - c1.cocurv) < 1e-10 * scale);
    const double s2 = std::max({1.0, std::abs(r2.cocurv), std::abs(r2.curv), std::abs(r2.cx),
                                std::abs(r2.cy)});
    // 1e-10 at unit scale plus the unavoidable roundoff of forming the
    // product from large reflected coordinates
    const double ptol = 1e-10 * std::max(1.0, std::abs(geom::inversive_product(c1, c2))) +
                        1e-14 * scale * s2;
    REQUIRE(std::abs(geom::inversive_product(r1, r2) - geom::inversive_product(c1, c2)) < ptol);
  }
}

TEST_CASE("property: unit norm exact under long integer reflection words") {
  using Big = boost::multiprecision::cpp_int;
  using BigCircle = geom::InversiveCircleT<Big>;

  const auto root64 = packing::strip_root_circles();
  std::array<BigCircle, 4> root;
  std::array<BigCircle, 4> mirrors;
  for (int i = 0; i < 4; ++i)
    root[i] = {Big(root64[i].cocurv), Big(root64[i].curv), Big(root64[i].cx), Big(root64[i].cy)};
  // dual mirrors (integral for this root): (v_i - sum of others) / 2
  for (int i = 0; i < 4; ++i) {
    BigCircle m{};
    for (int j = 0; j < 4; ++j) {
      const Big s = (j == i) ? 1 : -1;
      m.cocurv += s * root[j].cocurv;
      m.curv += s * root[j].curv;
      m.cx += s * root[j].cx;
      m.cy += s * root[j].cy;
    }
    mirrors[i] = {m.cocurv / 2, m.curv / 2, m.cx / 2, m.cy / 2};
    CHECK(geom::inversive_norm(mirrors[i]) == 1);
  }

  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    BigCircle c = root[static_cast<std::size_t>(pick(rng))];
    int last = -1;
    for (int step = 0; step < 50; ++step) {
      int m = pick(rng);
      if (m == last) m = (m + 1) % 4;
      last = m;
      c = geom::reflect_circle(mirrors[static_cast<std::size_t>(m)], c);
      REQUIRE(geom::inversive_norm(c) == 1);
    }
  }
}
