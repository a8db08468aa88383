#include "dunkl/measure.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace dunkl;

namespace {

// Midpoint Riemann sum of indicator * 2^k |x|^{2k} on [a, b] (rank one).
double riemann_1d(double k, double a, double b, const std::function<bool(double)>& in, int n = 2000000)
{
  const double h = (b - a) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a + (i + 0.5) * h;
    if (in(x)) acc += std::pow(2.0, k) * std::pow(std::abs(x), 2.0 * k);
  }
  return acc * h;
}

}  // namespace

TEST_CASE("integrate: elementary values")
{
  Geometry r0(rank_one_roots(0.0)), r1(rank_one_roots(1.0));
  auto one = fields::constant(1.0, 1);
  CHECK(integrate(r0, one, Region::ball(make_point1(0.0), 1.0)).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate(r1, one, Region::ball(make_point1(0.0), 1.0)).value == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  auto x = fields::coordinate(0, 1);
  CHECK(std::abs(integrate(r1, x, Region::ball(make_point1(0.0), 1.0)).value) < 1e-14);
}

TEST_CASE("ball volumes against Riemann oracles")
{
  Geometry r1(rank_one_roots(1.0));
  CHECK(ball_volume(r1, make_point1(0.0), 2.0) == doctest::Approx(8.0 * 4.0 / 3.0).epsilon(1e-9));
  const double far = riemann_1d(1.0, 9.9, 10.1, [](double) { return true; });
  CHECK(ball_volume(r1, make_point1(10.0), 0.1) == doctest::Approx(far).epsilon(1e-7));

  CHECK(orbit_ball_volume(r1, make_point1(0.0), 1.0) == doctest::Approx(ball_volume(r1, make_point1(0.0), 1.0)));
  CHECK(orbit_ball_volume(r1, make_point1(10.0), 1.0) ==
        doctest::Approx(2.0 * ball_volume(r1, make_point1(10.0), 1.0)).epsilon(1e-9));
  const double overlap =
      riemann_1d(1.0, -2.0, 2.0, [](double t) { return std::min(std::abs(t - 0.5), std::abs(t + 0.5)) < 1.0; });
  const double ob = orbit_ball_volume(r1, make_point1(0.5), 1.0);
  CHECK(ob == doctest::Approx(overlap).epsilon(1e-7));
  CHECK(ob < 2.0 * ball_volume(r1, make_point1(0.5), 1.0));
}

TEST_CASE("surrogate volume")
{
  Geometry r0(rank_one_roots(0.0)), r1(rank_one_roots(1.0));
  CHECK(surrogate_volume(r0, make_point1(3.0), 0.5) == doctest::Approx(0.5));
  CHECK(surrogate_volume(r1, make_point1(0.0), 0.5) == doctest::Approx(0.125));
  CHECK(surrogate_volume(r1, make_point1(1.0), 1.0) == doctest::Approx(std::pow(std::sqrt(2.0) + 1.0, 2.0)));
}

TEST_CASE("growth check")
{
  Geometry r0(rank_one_roots(0.0)), r1(rank_one_roots(1.0));
  auto g0 = growth_check(r0, make_point1(1.3), 2.0, 0.5);
  CHECK(g0.ratio == doctest::Approx(4.0).epsilon(1e-10));
  auto g1 = growth_check(r1, make_point1(0.0), 2.0, 0.5);
  CHECK(g1.ratio == doctest::Approx(64.0).epsilon(1e-9));
  CHECK_FALSE(g1.violated);
  auto g5 = growth_check(r1, make_point1(5.0), 1.0, 0.1);
  const double oracle = riemann_1d(1.0, 4.0, 6.0, [](double) { return true; }) /
                        riemann_1d(1.0, 4.9, 5.1, [](double) { return true; });
  CHECK(g5.ratio == doctest::Approx(oracle).epsilon(1e-7));
  CHECK(g5.ratio > 10.0);
  CHECK(g5.ratio < 1000.0);
}

TEST_CASE("gaussian normalization")
{
  CHECK(gaussian_normalization(Geometry(rank_one_roots(0.0))) ==
        doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-11));
  CHECK(gaussian_normalization(Geometry(product_roots<double>({0.0, 0.0}))) ==
        doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-10));
  // trapezoid oracle for 2 x^2 e^{-x^2/2}
  double acc = 0.0;
  const double h = 1e-4;
  for (int i = -400000; i <= 400000; ++i) {
    const double x = i * h;
    acc += 2.0 * x * x * std::exp(-0.5 * x * x);
  }
  acc *= h;
  CHECK(gaussian_normalization(Geometry(rank_one_roots(1.0))) == doctest::Approx(acc).epsilon(1e-10));
  CHECK(gaussian_normalization_product({1.0}) == doctest::Approx(acc).epsilon(1e-10));
  CHECK(gaussian_normalization(Geometry(product_roots<double>({0.5, 1.0}))) ==
        doctest::Approx(gaussian_normalization_product({0.5, 1.0})).epsilon(1e-9));
}

TEST_CASE("scaling, doubling and orbit sandwich in two dimensions")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0), lr(std::log(0.05), std::log(2.0));
  for (const Geometry& geo : {Geometry(product_roots<double>({0.5, 1.0})), Geometry(dihedral_roots(4, 0.5, 1.0))}) {
    const double N = geo.homogeneous_dim();
    for (int s = 0; s < 4; ++s) {
      Point x = make_point({u(rng), u(rng)});
      const double r = std::exp(lr(rng));
      const double v = ball_volume(geo, x, r);
      const double v2 = ball_volume(geo, Point(2.0 * x), 2.0 * r);
      CHECK(std::abs(v2 - std::pow(2.0, N) * v) / v2 <= 1e-5);
      CHECK(ball_volume(geo, x, 2.0 * r) / v <= std::pow(2.0, N) * (1.0 + 1e-5));
      const double ov = orbit_ball_volume(geo, x, r);
      CHECK(ov >= v * (1.0 - 1e-6));
      CHECK(ov <= geo.group().size() * v * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("annulus region")
{
  Geometry r0(product_roots<double>({0.0, 0.0}));
  Region ring = Region::ball(make_point({0.0, 0.0}), 2.0);
  ring.exclude({make_point({0.0, 0.0})}, 1.0);
  const Integrand one = [](const Point&) { return 1.0; };
  CHECK(integrate(r0, one, ring).value == doctest::Approx(3.0 * std::numbers::pi).epsilon(1e-7));
}

TEST_CASE("tensor quadrature scheme")
{
  Geometry geo(product_roots<double>({0.5, 1.0}));
  QuadratureScheme q(geo, Box{make_point({-1.0, -0.5}), make_point({2.0, 3.0})}, 6);
  CHECK(q.validate() < 1e-12);
  for (double w : q.weights()) CHECK(w > 0.0);
  Geometry dih(dihedral_roots(4, 1.0, 1.0));
  CHECK_THROWS_AS(QuadratureScheme(dih, Box{make_point({-1.0, -1.0}), make_point({1.0, 1.0})}, 4), UnsupportedGroup);
}

TEST_CASE("rank-one closed-form volume matches quadrature")
{
  for (double k : {0.0, 0.25, 1.0}) {
    Geometry geo(rank_one_roots(k));
    for (auto [x, r] : {std::pair{0.0, 1.0}, {0.3, 1.0}, {-2.0, 0.5}, {5.0, 0.01}})
      CHECK(ball_volume_rank_one(k, x, r) == doctest::Approx(ball_volume(geo, make_point1(x), r)).epsilon(1e-9));
  }
}
