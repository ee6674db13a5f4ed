#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "specgap/dimension.hpp"

using namespace specgap;
using dimension::LimitSetSample;

TEST_CASE("base eigenvalue examples") {
  CHECK(dimension::base_eigenvalue(1.3057, 2) == doctest::Approx(0.9065).epsilon(1e-3));
  CHECK(dimension::base_eigenvalue(1.0, 2) == doctest::Approx(1.0));   // delta = n/2 -> n^2/4
  CHECK(dimension::base_eigenvalue(0.5, 1) == doctest::Approx(0.25));
  CHECK(dimension::base_eigenvalue(1.0, 1) == doctest::Approx(0.0));   // lattice case
  CHECK_THROWS_AS((void)dimension::base_eigenvalue(-0.1, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)dimension::base_eigenvalue(2.5, 2), std::invalid_argument);
}

TEST_CASE("eigenvalue inversion examples and round trip") {
  CHECK(dimension::dimension_from_eigenvalue(0.9065, 2) == doctest::Approx(1.3057).epsilon(1e-3));
  CHECK(dimension::dimension_from_eigenvalue(0.0, 1) == doctest::Approx(1.0));
  CHECK(dimension::dimension_from_eigenvalue(0.25, 1) == doctest::Approx(0.5));
  CHECK(dimension::dimension_from_eigenvalue(1.0, 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)dimension::dimension_from_eigenvalue(0.3, 1), std::invalid_argument);

  for (int n : {1, 2, 3}) {
    for (double lam = 0.0; lam <= n * n / 4.0 + 1e-12; lam += n * n / 40.0) {
      const double delta = dimension::dimension_from_eigenvalue(lam, n);
      CHECK(dimension::base_eigenvalue(delta, n) == doctest::Approx(lam).epsilon(1e-12));
    }
  }
}

TEST_CASE("base eigenvalue is symmetric about n/2") {
  for (int n : {1, 2, 4}) {
    for (double d = 0.05; d < n; d += 0.07) {
      CHECK(dimension::base_eigenvalue(d, n) ==
            doctest::Approx(dimension::base_eigenvalue(n - d, n)).epsilon(1e-13));
    }
  }
}

TEST_CASE("hecke limit set sampler basics") {
  CHECK_THROWS_AS((void)dimension::sample_hecke_limit_set(1.5, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)dimension::sample_hecke_limit_set(2.0, 3, 5), std::invalid_argument);

  const auto s = dimension::sample_hecke_limit_set(4.0, 1, 1);
  std::multiset<double> pts(s.points.size() > 0 ? std::multiset<double>{} : std::multiset<double>{});
  for (const auto& p : s.points) pts.insert(p.x);
  CHECK(pts == std::multiset<double>{-0.25, 0.0, 0.25});

  // monotone refinement: deeper sampling only adds points
  const auto d2 = dimension::sample_hecke_limit_set(3.0, 2, 8);
  const auto d4 = dimension::sample_hecke_limit_set(3.0, 4, 8);
  std::set<double> s4;
  for (const auto& p : d4.points) s4.insert(p.x);
  for (const auto& p : d2.points) CHECK(s4.count(p.x) == 1);

  // bounded by the fixed point of the extreme contraction
  const double mu = 3.0;
  const double c = (mu - std::sqrt(mu * mu - 4.0)) / 2.0;
  const auto deep = dimension::sample_hecke_limit_set(mu, 6, 16);
  for (const auto& p : deep.points) CHECK(std::abs(p.x) <= c + 1e-12);
}

namespace {

LimitSetSample self_similar_sample(int pieces, double ratio, int depth) {
  // IFS x -> ratio*x + i*(1-ratio)/(pieces-1), i = 0..pieces-1, on [0,1]
  LimitSetSample s;
  s.ambient_dim = 1;
  s.depth = depth;
  std::vector<double> xs{0.0};
  for (int d = 0; d < depth; ++d) {
    std::vector<double> next;
    next.reserve(xs.size() * static_cast<std::size_t>(pieces));
    for (double x : xs)
      for (int i = 0; i < pieces; ++i)
        next.push_back(ratio * x + static_cast<double>(i) * (1.0 - ratio) / (pieces - 1));
    xs = std::move(next);
  }
  for (double x : xs) s.points.push_back({x, 0.0, false});
  return s;
}

}  // namespace

TEST_CASE("box counting recovers known self-similar dimensions") {
  const auto cantor = self_similar_sample(2, 1.0 / 3.0, 12);
  const auto est = dimension::box_counting_dimension(cantor, dimension::dyadic_scales(4, 12));
  CHECK(est.delta == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.03));

  const auto interval = self_similar_sample(2, 0.5, 14);  // fills [0,1]
  const auto est1 = dimension::box_counting_dimension(interval, dimension::dyadic_scales(4, 12));
  CHECK(est1.delta == doctest::Approx(1.0).epsilon(0.02));

  const auto planted = self_similar_sample(3, 0.2, 8);
  const auto est3 = dimension::box_counting_dimension(planted, dimension::dyadic_scales(4, 11));
  CHECK(est3.delta == doctest::Approx(std::log(3.0) / std::log(5.0)).epsilon(0.03));
}

TEST_CASE("box counting flags degenerate samples") {
  LimitSetSample s;
  s.ambient_dim = 1;
  for (int i = 0; i < 100; ++i) s.points.push_back({0.37, 0.0, false});
  const auto est = dimension::box_counting_dimension(s, dimension::dyadic_scales(4, 12));
  CHECK(est.degenerate);
  CHECK(est.delta == 0.0);
}

TEST_CASE("box counting rejects bad scale lists") {
  const auto s = self_similar_sample(2, 0.5, 6);
  CHECK_THROWS_AS((void)dimension::box_counting_dimension(s, {0.5, 0.25, 0.125}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)dimension::box_counting_dimension(s, {0.5, 0.4, 0.3, 0.25}),
                  std::invalid_argument);
}

TEST_CASE("hecke limit-set dimension sits between 1/2 and 1") {
  for (double mu : {2.5, 3.0, 4.0, 6.0}) {
    const auto sample = dimension::sample_hecke_limit_set(mu, 10, 64, {std::pow(0.5, 15)});
    const auto est = dimension::box_counting_dimension(sample, dimension::dyadic_scales(5, 12));
    CHECK(est.delta > 0.5);
    CHECK(est.delta < 1.0);
  }
}
