#include "dunkl/heat.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace dunkl;

TEST_CASE("classical reduction")
{
  Geometry r0(rank_one_roots(0.0));
  HeatKernel h(r0);
  for (double t : {0.01, 0.5, 3.0})
    for (double x : {-2.0, 0.0, 1.5})
      for (double y : {-1.0, 0.3, 2.5}) {
        const double g = std::exp(-(x - y) * (x - y) / (4 * t)) / std::sqrt(4 * std::numbers::pi * t);
        CHECK(h(t, make_point1(x), make_point1(y)) == doctest::Approx(g).epsilon(1e-12));
        if (t >= 0.5)
          CHECK(h.value(HeatRoute::Spectral, t, make_point1(x), make_point1(y)) == doctest::Approx(g).epsilon(1e-8));
      }
  Geometry r00(product_roots<double>({0.0, 0.0}));
  HeatKernel h2(r00);
  Point x = make_point({0.2, -1.0}), y = make_point({1.0, 0.5});
  const double g2 = std::exp(-(x - y).squaredNorm() / 2.0) / (2.0 * std::numbers::pi);
  CHECK(h2(0.5, x, y) == doctest::Approx(g2).epsilon(1e-12));
  CHECK(h2.value(HeatRoute::ClassicalGaussian, 0.5, x, y) == doctest::Approx(g2).epsilon(1e-12));
  CHECK(h2.c_kappa() == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("routes agree in rank one")
{
  Geometry geo(rank_one_roots(1.0));
  HeatKernel h(geo);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0), lt(std::log(0.25), std::log(2.0));
  double worst_series = 0.0, worst_spec = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = std::exp(lt(rng));
    Point x = make_point1(u(rng)), y = make_point1(u(rng));
    const double a = h(t, x, y);
    worst_series = std::max(worst_series, std::abs(a - h.value(HeatRoute::Series, t, x, y)) / a);
    worst_spec = std::max(worst_spec, h.cross_validate(HeatRoute::Spectral, t, x, y, 1e-5));
  }
  CHECK(worst_series < 1e-10);
  CHECK(worst_spec < 1e-5);
}

TEST_CASE("heat kernel axioms, rank one k = 1")
{
  Geometry geo(rank_one_roots(1.0));
  HeatKernel h(geo);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0), lt(std::log(0.01), std::log(10.0));
  for (int i = 0; i < 50; ++i) {
    const double t = std::exp(lt(rng));
    Point x = make_point1(u(rng)), y = make_point1(u(rng));
    const double a = h(t, x, y), b = h(t, y, x);
    CHECK(a > 0.0);
    CHECK(std::abs(a - b) <= 1e-8 * a);
  }
  for (double t : {0.05, 1.0, 4.0})
    for (double x : {0.0, 0.7, -3.0}) CHECK(std::abs(heat_mass(h, t, make_point1(x)) - 1.0) <= 1e-5);
}

TEST_CASE("semigroup and eigenfunctions")
{
  Geometry geo(rank_one_roots(1.0));
  HeatKernel h(geo);
  auto f = fields::gaussian_bump(make_point1(0.8), 0.5);
  const double s = 0.3, t = 0.5;
  for (double x : {-0.5, 0.4, 1.2}) {
    ScalarField Htf([&](const Point& y) { return heat_apply(h, f, t, y, {1e-9}); });
    const double lhs = heat_apply(h, Htf, s, make_point1(x), {1e-7});
    const double rhs = heat_apply(h, f, s + t, make_point1(x), {1e-9});
    CHECK(std::abs(lhs - rhs) <= 1e-4 * std::abs(rhs));
  }
  const double xi0 = 1.3;
  ScalarField A([&](const Point& y) { return normalized_bessel(0.5, xi0 * y(0)); });
  for (double x : {0.2, 1.0, -2.0}) {
    const double got = heat_apply(h, A, 0.4, make_point1(x), {1e-9});
    const double want = std::exp(-0.4 * xi0 * xi0) * normalized_bessel(0.5, xi0 * x);
    CHECK(std::abs(got - want) <= 1e-3 * std::abs(want));
  }
}

TEST_CASE("product group kernel")
{
  Geometry geo(product_roots<double>({0.5, 1.0}));
  HeatKernel h(geo);
  Point x = make_point({0.4, -0.9}), y = make_point({-1.1, 0.3});
  CHECK(h(0.7, x, y) == doctest::Approx(h(0.7, y, x)).epsilon(1e-10));
  CHECK(h.cross_validate(HeatRoute::Spectral, 0.7, x, y) < 1e-5);
  HeatApplyOptions o;
  o.rel_tol = 1e-7;
  CHECK(std::abs(heat_mass(h, 0.6, x, o) - 1.0) <= 1e-5);
  CHECK_THROWS_AS(HeatKernel(Geometry(dihedral_roots(3, 1.0, 1.0))), UnsupportedGroup);
}

TEST_CASE("Gaussian envelopes")
{
  Geometry geo(rank_one_roots(1.0));
  HeatKernel h(geo);
  const auto grid = heat_grid(1, 1e-2, 1e2, 5, 5.0, 11);
  auto r = gaussian_bounds(h, grid);
  CHECK(std::isfinite(r.upper.sup));
  CHECK(r.lower.inf > 0.0);
  CHECK(r.c_upper > 0.0);
  auto rep = gaussian_bounds_check(h, grid);
  CHECK(rep.passed());

  Geometry r0(rank_one_roots(0.0));
  HeatKernel h0(r0);
  // Classical: upper ratio with c = 1/4 is (4 pi)^-1/2 * 2 (1 + |x-y|/sqrt t)^2 ... bounded on the grid.
  auto r0b = gaussian_bounds(h0, grid, 0.2, 0.25);
  CHECK(std::isfinite(r0b.upper.sup));
  CHECK(r0b.lower.inf == doctest::Approx(r0b.lower.sup).epsilon(1e-9));
}

TEST_CASE("Holder envelope")
{
  Geometry geo(rank_one_roots(1.0));
  HeatKernel h(geo);
  std::vector<HolderSample> s{{1.0, make_point1(0.3), make_point1(1.0), make_point1(1.0)}};
  CHECK(holder_ratios(h, s, 0.1).sup == 0.0);
  s.push_back({1.0, make_point1(0.3), make_point1(1.0), make_point1(1.5)});
  s.push_back({0.04, make_point1(-2.0), make_point1(2.5), make_point1(2.4)});
  CHECK(std::isfinite(holder_ratios(h, s, 0.1).sup));
  s.push_back({0.04, make_point1(-2.0), make_point1(2.5), make_point1(2.0)});
  CHECK_THROWS_AS(holder_ratios(h, s, 0.1), RejectedSample);
}
