#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "specgap/packing.hpp"

using namespace specgap;
using packing::DescartesQuadruple;

TEST_CASE("swap examples on the classical root") {
  const DescartesQuadruple root = packing::bounded_root();
  CHECK(packing::descartes_defect(root) == 0);

  const auto s4 = packing::swap(root, 3);
  CHECK(s4.k == std::array<std::int64_t, 4>{-1, 2, 2, 3});  // fixed by symmetry of this root

  const auto s1 = packing::swap(root, 0);
  CHECK(s1.k == std::array<std::int64_t, 4>{15, 2, 2, 3});
  CHECK(2 * (225 + 4 + 4 + 9) == (15 + 2 + 2 + 3) * (15 + 2 + 2 + 3));
  CHECK(packing::descartes_defect(s1) == 0);

  const auto s2 = packing::swap(root, 1);
  CHECK(s2.k == std::array<std::int64_t, 4>{-1, 6, 2, 3});
  CHECK(packing::descartes_defect(s2) == 0);

  for (int i = 0; i < 4; ++i) CHECK(packing::swap(packing::swap(root, i), i) == root);
}

TEST_CASE("property: Descartes relation exact along random words") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int w = 0; w < 100000; ++w) {
    DescartesQuadruple q = packing::bounded_root();
    int last = -1;
    for (int step = 0; step < 20; ++step) {
      int i = pick(rng);
      if (i == last) i = (i + 1) % 4;
      last = i;
      const std::int64_t replaced = q.k[i];
      q = packing::swap(q, i);
      REQUIRE(packing::descartes_defect(q) == 0);
      REQUIRE(q.k[i] >= replaced);  // non-backtracking swaps never shrink the entry
    }
  }
}

TEST_CASE("enumeration basics") {
  const auto root = packing::bounded_root();
  CHECK(packing::enumerate_curvatures(root, 1.0).empty());

  const auto n3 = packing::enumerate_curvatures(root, 3.0);
  CHECK(n3 == std::vector<std::int64_t>{2, 2, 3, 3});

  CHECK_THROWS_AS((void)packing::enumerate_curvatures({{1, 2, 2, 3}}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS((void)packing::enumerate_curvatures({{-1, 2, 2, 4}}, 10.0), std::invalid_argument);
}

TEST_CASE("pruned walk matches over-enumeration") {
  const auto root = packing::bounded_root();
  const auto direct = packing::enumerate_curvatures(root, 100.0);
  auto over = packing::enumerate_curvatures(root, 1000.0);
  over.erase(std::remove_if(over.begin(), over.end(), [](std::int64_t k) { return k > 100; }),
             over.end());
  CHECK(direct == over);
}

TEST_CASE("curvature-only and geometric walks count the same circles") {
  const auto root = packing::bounded_root();
  const auto circles = packing::enumerate_circles_geometric(packing::bounded_root_circles(), 100.0);
  const auto curvatures = packing::enumerate_curvatures(root, 100.0);
  REQUIRE(circles.size() == curvatures.size());
  std::vector<std::int64_t> geo;
  for (const auto& c : circles) geo.push_back(c.curv);
  std::sort(geo.begin(), geo.end());
  CHECK(geo == curvatures);
}

TEST_CASE("geometric orbit has no duplicates to word length 8") {
  using Circle = geom::InversiveCircleT<std::int64_t>;
  struct Node {
    packing::CirclesQuadruple q;
    int last, depth;
  };
  std::set<std::array<std::int64_t, 4>> seen;
  std::vector<Node> stack{{packing::bounded_root_circles(), -1, 0}};
  auto key = [](const Circle& c) {
    return std::array<std::int64_t, 4>{c.cocurv, c.curv, c.cx, c.cy};
  };
  for (const auto& c : stack.front().q) REQUIRE(seen.insert(key(c)).second);
  while (!stack.empty()) {
    const Node n = stack.back();
    stack.pop_back();
    if (n.depth >= 8) continue;
    for (int i = 0; i < 4; ++i) {
      if (i == n.last) continue;
      const auto child = packing::swap_circles(n.q, i);
      REQUIRE(seen.insert(key(child[i])).second);  // injective on circles
      stack.push_back({child, i, n.depth + 1});
    }
  }
}

TEST_CASE("geometric output is a packing: pairwise disjoint interiors and tangencies") {
  const auto circles = packing::enumerate_circles_geometric(packing::bounded_root_circles(), 40.0);
  // include the bounding circle with its outward orientation
  std::vector<geom::InversiveCircle> all;
  for (const auto& c : circles)
    all.push_back({static_cast<double>(c.cocurv), static_cast<double>(c.curv),
                   static_cast<double>(c.cx), static_cast<double>(c.cy)});
  const auto root = packing::bounded_root_circles();
  all.push_back({static_cast<double>(root[0].cocurv), static_cast<double>(root[0].curv),
                 static_cast<double>(root[0].cx), static_cast<double>(root[0].cy)});
  int tangencies = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double p = geom::inversive_product(all[i], all[j]);
      REQUIRE(p <= -1.0 + 1e-9);  // tangent or separated, never overlapping
      if (std::abs(p + 1.0) < 1e-9) ++tangencies;
    }
  CHECK(tangencies > static_cast<int>(all.size()));  // every circle touches several others
}

TEST_CASE("count_profile examples") {
  const auto root = packing::bounded_root();
  const auto p1 = packing::count_profile(root, {1.0});
  CHECK(p1.counts == std::vector<std::int64_t>{0});

  const auto p3 = packing::count_profile(root, {3.0});
  CHECK(p3.counts == std::vector<std::int64_t>{4});

  std::vector<double> ladder;
  for (double t = 100.0; t <= 10000.0; t *= 2.0) ladder.push_back(t);
  const auto prof = packing::count_profile(root, ladder);
  for (std::size_t i = 1; i < prof.counts.size(); ++i) CHECK(prof.counts[i] >= prof.counts[i - 1]);
  // counts agree with direct enumeration at each threshold
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto direct = packing::enumerate_curvatures(root, prof.thresholds[i]);
    CHECK(prof.counts[i] == static_cast<std::int64_t>(direct.size()));
  }
}

TEST_CASE("fit_growth_exponent on planted data") {
  packing::CountProfile synth;
  synth.root = packing::bounded_root();
  for (double t = 10.0; t <= 1e6; t *= 2.5) {
    synth.thresholds.push_back(t);
    synth.counts.push_back(static_cast<std::int64_t>(std::llround(7.0 * std::pow(t, 1.5))));
  }
  const auto fit = packing::fit_growth_exponent(synth, 10.0);
  CHECK(fit.delta_hat == doctest::Approx(1.5).epsilon(0.01));
  CHECK(fit.stderr < 0.01);

  packing::CountProfile flat;
  flat.root = synth.root;
  for (double t = 10.0; t <= 1e4; t *= 2.0) {
    flat.thresholds.push_back(t);
    flat.counts.push_back(42);
  }
  const auto fit0 = packing::fit_growth_exponent(flat, 10.0);
  CHECK(fit0.delta_hat == doctest::Approx(0.0).epsilon(1e-12));

  packing::CountProfile tiny;
  tiny.root = synth.root;
  tiny.thresholds = {10.0, 100.0, 1000.0};
  tiny.counts = {1, 10, 100};
  CHECK_THROWS_AS((void)packing::fit_growth_exponent(tiny, 1.0), std::invalid_argument);
}

TEST_CASE("realize_root reproduces the classical configuration") {
  const auto circles = packing::realize_root({{-1.0, 2.0, 2.0, 3.0}});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(geom::is_externally_tangent(circles[i], circles[j], 1e-9));
  // curvature multiset matches
  std::multiset<double> ks;
  for (const auto& c : circles) ks.insert(c.curv);
  CHECK(ks == std::multiset<double>{-1.0, 2.0, 2.0, 3.0});
}

TEST_CASE("tangency points lie on both circles") {
  const auto root = packing::bounded_root_circles();
  std::vector<geom::Point> pts;
  packing::for_each_tangency(root, 20.0, [&](const geom::Point& p) { pts.push_back(p); });
  CHECK(pts.size() > 20);
  // all tangency points of a bounded packing lie inside the closed unit disk
  for (const auto& p : pts) CHECK(p.x * p.x + p.y * p.y <= 1.0 + 1e-9);
}
