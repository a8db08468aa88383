#include "dunkl/geometry.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

using namespace dunkl;

namespace {

// Brute-force closure: multiply every known element by every reflection
// until nothing new appears, comparing entries rounded to 1e-9.
std::size_t brute_force_order(const std::vector<Point>& roots)
{
  const auto n = roots.front().size();
  std::vector<Matrix> gens;
  for (const auto& a : roots) gens.push_back(Matrix::Identity(n, n) - a * a.transpose() * (2.0 / a.squaredNorm()));
  auto key = [](const Matrix& m) {
    std::vector<long long> k;
    for (Eigen::Index i = 0; i < m.size(); ++i) k.push_back(std::llround(m.data()[i] * 1e9));
    return k;
  };
  std::set<std::vector<long long>> seen{key(Matrix::Identity(n, n))};
  std::vector<Matrix> all{Matrix::Identity(n, n)};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& g : gens) {
      Matrix m = g * all[i];
      if (seen.insert(key(m)).second) all.push_back(m);
    }
  return all.size();
}

}  // namespace

TEST_CASE("reflect is an involution and fixes the hyperplane")
{
  Point a = make_point1(std::sqrt(2.0));
  CHECK(reflect(a, make_point1(3.0))(0) == doctest::Approx(-3.0));
  Point a2 = make_point({std::sqrt(2.0), 0.0});
  Point x = make_point({1.0, 2.0});
  Point rx = reflect(a2, x);
  CHECK(rx(0) == doctest::Approx(-1.0));
  CHECK(rx(1) == doctest::Approx(2.0));
  CHECK((reflect(a2, rx) - x).norm() < 1e-14);
  Point ortho = make_point({0.0, 5.0});
  CHECK((reflect(a2, ortho) - ortho).norm() < 1e-14);
}

TEST_CASE("group orders")
{
  Geometry r1(rank_one_roots(1.0));
  CHECK(r1.group().size() == 2);
  Geometry z22(product_roots<double>({1.0, 1.0}));
  CHECK(z22.group().size() == 4);
  auto d4 = dihedral_roots(4, 0.5, 1.0);
  Geometry i24(d4);
  CHECK(i24.group().size() == brute_force_order(d4.roots()));
  CHECK(i24.group().size() == 8);
  const auto& id = i24.group()[i24.group().identity_index()];
  CHECK((id - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("group is closed and preserves roots")
{
  Geometry geo(dihedral_roots(3, 1.0, 1.0));
  const auto& G = geo.group();
  for (const auto& g : G) {
    CHECK((g.transpose() * g - Matrix::Identity(2, 2)).norm() < 1e-12);
    for (const auto& h : G) {
      Matrix gh = g * h;
      bool found = false;
      for (const auto& e : G) found = found || (e - gh).norm() < 1e-9;
      CHECK(found);
    }
    for (const auto& a : geo.roots().roots()) CHECK(geo.roots().find(Point(g * a)).has_value());
  }
}

TEST_CASE("closure cap")
{
  CHECK_THROWS_AS(build_group(dihedral_roots(6, 1.0, 1.0), 5), ClosureOverflow);
}

TEST_CASE("invalid root systems are rejected")
{
  CHECK_THROWS_AS(RootSystemd({make_point1(1.0), make_point1(-1.0)}, {1.0, 1.0}), InvalidRootSystem);
  CHECK_THROWS_AS(RootSystemd({make_point1(std::sqrt(2.0))}, {1.0}), InvalidRootSystem);
  CHECK_THROWS_AS(RootSystemd({make_point1(std::sqrt(2.0)), make_point1(-std::sqrt(2.0))}, {1.0, -1.0}),
                  InvalidRootSystem);
}

TEST_CASE("orbits and metric")
{
  Geometry r1(rank_one_roots(1.0));
  CHECK(r1.orbit_of(make_point1(0.0)).size() == 1);
  CHECK(r1.orbit_of(make_point1(3.0)).size() == 2);
  CHECK(r1.metric(make_point1(3.0), make_point1(-3.0)) == doctest::Approx(0.0));
  CHECK(r1.metric(make_point1(3.0), make_point1(-2.0)) == doctest::Approx(1.0));
  Geometry z22(product_roots<double>({1.0, 1.0}));
  CHECK(z22.orbit_of(make_point({1.0, 2.0})).size() == 4);
  CHECK(z22.orbit_of(make_point({0.0, 2.0})).size() == 2);
}

TEST_CASE("metric properties on samples")
{
  Geometry geo(dihedral_roots(4, 0.5, 1.0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int s = 0; s < 200; ++s) {
    Point x = make_point({u(rng), u(rng)}), y = make_point({u(rng), u(rng)}), z = make_point({u(rng), u(rng)});
    const double dxy = geo.metric(x, y);
    CHECK(geo.metric(x, z) <= dxy + geo.metric(y, z) + 1e-12);
    CHECK(dxy <= (x - y).norm() + 1e-15);
    CHECK(dxy == doctest::Approx(geo.metric(y, x)).epsilon(1e-14));
    for (const auto& g : geo.group()) CHECK(geo.metric(Point(g * x), y) == doctest::Approx(dxy).epsilon(1e-12));
    CHECK(geo.group().size() % geo.orbit_of(x).size() == 0);
  }
}

TEST_CASE("weight and homogeneous dimension")
{
  Geometry r1(rank_one_roots(1.0));
  CHECK(r1.weight(make_point1(2.0)) == doctest::Approx(8.0));
  CHECK(r1.gamma() == 2.0);
  CHECK(r1.homogeneous_dim() == 3.0);
  Geometry r0(rank_one_roots(0.0));
  CHECK(r0.weight(make_point1(2.0)) == 1.0);
  CHECK(r0.homogeneous_dim() == 1.0);
  CHECK(r0.trivial_multiplicity());
  Geometry z22(product_roots<double>({1.0, 1.0}));
  CHECK(z22.weight(make_point({1.0, 1.0})) == doctest::Approx(4.0));
  CHECK(z22.gamma() == 4.0);
  CHECK(z22.homogeneous_dim() == 6.0);
  CHECK(z22.is_sign_group());

  Geometry d(dihedral_roots(4, 0.5, 1.0));
  CHECK_FALSE(d.is_sign_group());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int s = 0; s < 50; ++s) {
    Point x = make_point({u(rng), u(rng)});
    for (const auto& g : d.group()) CHECK(d.weight(Point(g * x)) == doctest::Approx(d.weight(x)).epsilon(1e-12));
    for (double t : {0.5, 2.0, 10.0}) {
      const double lhs = d.weight(Point(t * x));
      CHECK(std::abs(lhs - std::pow(t, d.gamma()) * d.weight(x)) / lhs <= 1e-10);
    }
  }
}
