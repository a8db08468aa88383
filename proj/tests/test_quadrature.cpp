#include "dunkl/quadrature.hpp"

#include "doctest.h"

#include <cmath>

using namespace dunkl;

namespace {

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

}  // namespace

TEST_CASE("Gauss-Jacobi integrates (1+s)^m exactly below degree 2n")
{
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 1.0}, {-0.5, 2.0}, {1.5, -0.3}}) {
    const int n = 8;
    const auto& rule = gauss_jacobi(n, a, b);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(std::pow(2.0, a + b + 1.0) * beta_fn(a + 1.0, b + 1.0)).epsilon(1e-13));
    for (int m = 0; m < 2 * n; ++m) {
      double got = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) got += rule.weights[i] * std::pow(1.0 + rule.nodes[i], m);
      const double exact = std::pow(2.0, a + b + m + 1.0) * beta_fn(a + 1.0, b + m + 1.0);
      CHECK(got == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("jacobi_panel endpoint convention")
{
  // int_1^3 (3-s)^0.5 ds = (2^1.5)/1.5
  const double v = jacobi_panel([](double) { return 1.0; }, 1.0, 3.0, 0.5, 0.0, 6);
  CHECK(v == doctest::Approx(std::pow(2.0, 1.5) / 1.5).epsilon(1e-13));
  // int_1^3 s (s-1)^2 ds = [u^4/4 + u^3/3]_0^2 with u = s-1
  const double w = jacobi_panel([](double s) { return s; }, 1.0, 3.0, 0.0, 2.0, 4);
  CHECK(w == doctest::Approx(4.0 + 8.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("adaptive Gauss-Kronrod")
{
  auto r1 = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(r1.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  auto r2 = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(r2.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  auto r3 = integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0);
  CHECK(r3.value == doctest::Approx(-1.0).epsilon(1e-9));
  const std::vector<double> br{-1.0, 0.0, 1.0};
  auto r4 = integrate_adaptive([](double x) { return std::abs(x); }, std::span<const double>(br));
  CHECK(r4.value == doctest::Approx(1.0).epsilon(1e-14));
  AdaptiveOptions tight;
  tight.max_intervals = 3;
  tight.rel_tol = 1e-15;
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0, tight),
                  NoConvergence);
}

TEST_CASE("make_breaks")
{
  auto b = make_breaks(0.0, 1.0, {0.5, -1.0, 2.0, 0.5, 0.25, 1.0});
  REQUIRE(b.size() == 4);
  CHECK(b[1] == 0.25);
  CHECK(b[2] == 0.5);
}
