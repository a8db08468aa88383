#include "dunkl/oscillation.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace dunkl;

namespace {

Geometry rank_one(double k) { return Geometry(rank_one_roots(k)); }

Box interval(double a, double b) { return {make_point1(a), make_point1(b)}; }

// Mean of 1_[-1,1] over (c - r, c + r) at zero multiplicity.
double indicator_mean(double c, double r)
{
  const double len = std::max(0.0, std::min(1.0, c + r) - std::max(-1.0, c - r));
  return len / (2.0 * r);
}

// Independent enumeration of the dyadic lattice balls (m r/2 - r, m r/2 + r)
// containing x.
double indicator_maximal_oracle(double x, int k_min, int k_max)
{
  double best = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double r = std::ldexp(1.0, k);
    for (long m = -4096; m <= 4096; ++m) {
      const double c = m * r / 2;
      if (std::abs(x - c) < r) best = std::max(best, indicator_mean(c, r));
    }
  }
  return best;
}

// mean |log|x| - m| over (a, b) at zero multiplicity from the antiderivative
// G(x) = x log|x| - x - m x, split at |x| = e^m.
double log_oscillation(double a, double b)
{
  auto F = [](double x) { return x == 0.0 ? 0.0 : x * std::log(std::abs(x)) - x; };
  const double m = (F(b) - F(a)) / (b - a);
  auto G = [&](double x) { return F(x) - m * x; };
  std::vector<double> cuts{a};
  for (double t : {-std::exp(m), std::exp(m)})
    if (a < t && t < b) cuts.push_back(t);
  cuts.push_back(b);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) acc += std::abs(G(cuts[i + 1]) - G(cuts[i]));
  return acc / (b - a);
}

}  // namespace

TEST_CASE("ball families")
{
  const auto geo = rank_one(0.5);
  const Point x = make_point1(0.3);
  const auto fam = BallFamily::around(geo, x, -3, 3);
  CHECK(!fam.empty());
  for (const auto& b : fam.balls) CHECK(ball_contains(geo, b, x));
  // Centres (r/2) m within distance r: 3 or 4 per level.
  CHECK(fam.size() >= 7 * 3);
  CHECK(fam.size() <= 7 * 4);

  const auto dy = BallFamily::dyadic(interval(-1, 1), 0, 0);
  CHECK(dy.size() == 5);  // centres -1, -1/2, 0, 1/2, 1
  const auto central = BallFamily::dyadic(interval(-4, 4), -2, 2, BallConstraint::ContainsOrigin);
  for (const auto& b : central.balls) CHECK(b.center.norm() < b.radius);

  const auto coarse = BallFamily::dyadic(interval(-4, 4), -6, -6, BallConstraint::All, 100);
  CHECK(coarse.size() <= 100);
  CHECK(coarse.size() > 50);

  const auto orbit = BallFamily::around(geo, make_point1(-2.0), -1, 1, BallConstraint::OrbitBalls);
  for (const auto& b : orbit.balls) CHECK(b.kind == BallSpec::Kind::Orbit);
}

TEST_CASE("orbit ball measure matches quadrature")
{
  for (double k : {0.0, 0.5, 1.5}) {
    const auto geo = rank_one(k);
    for (auto [c, r] : {std::pair{2.0, 0.5}, {0.3, 1.0}, {-1.0, 1.0}}) {
      const BallSpec b{make_point1(c), r, BallSpec::Kind::Orbit};
      CHECK(ball_omega(geo, b) == doctest::Approx(orbit_ball_volume(geo, b.center, r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("maximal functions")
{
  const auto geo0 = rank_one(0.0);
  SUBCASE("constant field")
  {
    const auto geo = rank_one(1.0);
    const auto f = fields::constant(-2.5, 1);
    for (double x : {-3.0, 0.0, 0.7}) {
      const auto fam = BallFamily::around(geo, make_point1(x));
      CHECK(hl_maximal(geo, f, make_point1(x), fam) == doctest::Approx(2.5).epsilon(1e-14));
    }
  }
  SUBCASE("indicator at zero multiplicity")
  {
    const auto f = fields::ball_indicator(make_point1(0.0), 1.0);
    const auto at0 = BallFamily::around(geo0, make_point1(0.0));
    CHECK(hl_maximal(geo0, f, make_point1(0.0), at0) == doctest::Approx(1.0).epsilon(1e-10));
    for (double x : {3.0, -1.7, 0.9, 12.0}) {
      const auto fam = BallFamily::around(geo0, make_point1(x));
      CHECK(hl_maximal(geo0, f, make_point1(x), fam) ==
            doctest::Approx(indicator_maximal_oracle(x, -6, 6)).epsilon(1e-9));
    }
  }
  SUBCASE("fractional maximal")
  {
    const auto geo = rank_one(0.5);
    const auto f = fields::gaussian_bump(make_point1(1.0), 0.5);
    const Point x = make_point1(-0.4);
    const auto fam = BallFamily::around(geo, x);
    const double M = hl_maximal(geo, f, x, fam);
    CHECK(fractional_maximal(geo, f, x, 1e-6, fam) == doctest::Approx(M).epsilon(1e-5));
    CHECK_THROWS_AS(fractional_maximal(geo, f, x, 0.0, fam), BetaOutOfRange);
    CHECK_THROWS_AS(fractional_maximal(geo, f, x, 2.0, fam), BetaOutOfRange);
    // omega(B)^{beta/N} grows with the ball, so the fractional sup dominates
    // the plain one once every member has measure at least 1.
    BallFamily big;
    for (const auto& b : fam.balls)
      if (b.radius >= 2.0) big.balls.push_back(b);
    CHECK(fractional_maximal(geo, f, x, 1.0, big) >= hl_maximal(geo, f, x, big));
  }
  SUBCASE("empty family")
  {
    BallFamily fam;
    fam.balls.push_back({make_point1(10.0), 1.0});
    CHECK_THROWS_AS(hl_maximal(geo0, fields::constant(1, 1), make_point1(0.0), fam), EmptyFamily);
    CHECK_THROWS_AS(sharp_maximal(geo0, fields::constant(1, 1), make_point1(0.0), fam), EmptyFamily);
  }
  SUBCASE("sharp maximal of sign at the origin")
  {
    const auto geo = rank_one(1.0);
    const auto b = fields::sign_coordinate(0, 1);
    const auto fam = BallFamily::around(geo, make_point1(0.0));
    // Balls centred at 0 give oscillation exactly 1; nothing exceeds 1.
    CHECK(sharp_maximal(geo, b, make_point1(0.0), fam) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("oscillation values")
{
  for (double k : {0.0, 1.0}) {
    const auto geo = rank_one(k);
    const auto s = fields::sign_coordinate(0, 1);
    CHECK(oscillation(geo, s, {make_point1(0.0), 0.7}) == doctest::Approx(1.0).epsilon(1e-10));
  }
  const auto geo0 = rank_one(0.0);
  const auto x = fields::coordinate(0, 1);
  CHECK(oscillation(geo0, x, {make_point1(0.0), 1.0}) == doctest::Approx(0.5).epsilon(1e-10));
  // mean |x - 0| on (-1,1) against |x|^2 dx: (1/2) / (1/3) * ... = 3/4.
  CHECK(oscillation(rank_one(1.0), x, {make_point1(0.0), 1.0}) == doctest::Approx(0.75).epsilon(1e-10));
  const auto st = oscillation_stats(geo0, x, {make_point1(0.0), 1.0}, 2.0);
  CHECK(st.p_mean_dev == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(oscillation(geo0, fields::constant(4.0, 1), {make_point1(0.0), 1.0}) == 0.0);
}

TEST_CASE("log norm oscillation against closed form")
{
  const auto geo0 = rank_one(0.0);
  const auto b = fields::log_norm(1);
  const auto fam = BallFamily::dyadic(interval(-4, 4), -3, 2);
  double oracle = 0.0;
  for (const auto& ball : fam.balls) {
    const double c = ball.center(0), r = ball.radius;
    const double exact = log_oscillation(c - r, c + r);
    CAPTURE(c);
    CAPTURE(r);
    CHECK(oscillation(geo0, b, ball) == doctest::Approx(exact).epsilon(1e-8));
    oracle = std::max(oracle, exact);
  }
  CHECK(bmo_scan(geo0, b, BmoVariant::Dunkl, fam).sup == doctest::Approx(oracle).epsilon(1e-8));
  // Balls centred at 0 give 2/e; off-centre balls over 0 give more.
  CHECK(log_oscillation(-1.0, 1.0) == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-14));
  CHECK(oracle > 2.0 / std::numbers::e);
}

TEST_CASE("BMO invariances")
{
  const auto geo = rank_one(0.5);
  const auto b = fields::log_norm(1);
  const auto fam = BallFamily::dyadic(interval(-4, 4), -3, 2);
  for (auto v : {BmoVariant::Dunkl, BmoVariant::Central, BmoVariant::DunklMetric}) {
    CAPTURE(to_string(v));
    const double n = bmo_norm(geo, b, v, fam);
    CHECK(std::isfinite(n));
    CHECK(n > 0.0);
    CHECK(bmo_norm(geo, fields::constant(3.0, 1), v, fam) == 0.0);
    CHECK(bmo_norm(geo, fields::scaled(2.0, b), v, fam) == doctest::Approx(2.0 * n).epsilon(1e-14));
    CHECK(bmo_norm(geo, fields::scaled(-0.5, b), v, fam) == doctest::Approx(0.5 * n).epsilon(1e-14));
    CHECK(bmo_norm(geo, fields::sum(b, fields::constant(3.0, 1)), v, fam) == doctest::Approx(n).epsilon(1e-8));
    const auto eq = bmo_pmean_equivalence(geo, b, 2.0, v, fam);
    CHECK(eq.ratio >= 1.0);
    CHECK(std::isfinite(eq.ratio));
    CHECK(bmo_pmean_equivalence(geo, fields::constant(1.0, 1), 2.0, v, fam).ratio == 1.0);
  }
  CHECK(bmo_norm(geo, b, BmoVariant::Central, fam) <= bmo_norm(geo, b, BmoVariant::Dunkl, fam));
}

TEST_CASE("degenerate balls are skipped")
{
  const auto geo = rank_one(0.0);
  BallFamily fam;
  fam.balls.push_back({make_point1(0.0), 1e-16});
  fam.balls.push_back({make_point1(0.0), 1.0});
  const auto res = bmo_scan(geo, fields::coordinate(0, 1), BmoVariant::Dunkl, fam);
  CHECK(res.skipped == 1);
  CHECK(res.ball_count == 1);
  BallFamily only;
  only.balls.push_back({make_point1(0.0), 1e-16});
  CHECK_THROWS_AS(bmo_scan(geo, fields::coordinate(0, 1), BmoVariant::Dunkl, only), EmptyFamily);
}

TEST_CASE("medians")
{
  const auto x = fields::coordinate(0, 1);
  for (double k : {0.0, 0.5, 2.0}) {
    const auto geo = rank_one(k);
    // The weight vanishes at the median 0, so m is only determined up to a
    // set of negligible measure.
    const BallSpec ball{make_point1(0.0), 1.3};
    const double m = median(geo, x, ball);
    CHECK(interval_measure_rank_one(k, 0.0, std::abs(m)) / ball_omega(geo, ball) < 1e-11);
  }
  // omega-balanced point of (1, 3) under x^2 dx solves m^3 = 14.
  CHECK(median(rank_one(1.0), x, {make_point1(2.0), 1.0}) == doctest::Approx(std::cbrt(14.0)).epsilon(1e-10));
  CHECK(median(rank_one(0.0), x, {make_point1(2.0), 1.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(median(rank_one(1.0), fields::constant(-7.0, 1), {make_point1(2.0), 1.0}) == -7.0);

  // sign(x) on (-1, 2): the positive side carries 2/3 of the mass.
  const auto s = fields::sign_coordinate(0, 1);
  CHECK(median(rank_one(0.0), s, {make_point1(0.5), 1.5}) == doctest::Approx(1.0).epsilon(1e-12));
  // Exactly balanced: every m in [-1, 1] is a median; the infimum is -1.
  CHECK(median(rank_one(0.0), s, {make_point1(0.0), 1.0}) == doctest::Approx(-1.0).epsilon(1e-12));

  const auto geo = rank_one(0.5);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    ScalarField b = fields::sum(fields::gaussian_bump(make_point1(0.1 * seed), 0.4, 1.0),
                                fields::gaussian_bump(make_point1(-0.3 * seed), 0.7, -0.6));
    const BallSpec ball{make_point1(0.2 * seed - 0.5), 0.3 * seed};
    const double m = median(geo, b, ball);
    const auto split = median_split(geo, b, ball, m);
    CHECK(split.above <= 0.5 + 1e-6);
    CHECK(split.below <= 0.5 + 1e-6);
    const double shifted = median(geo, fields::sum(b, fields::constant(0.25, 1)), ball);
    CHECK(shifted == doctest::Approx(m + 0.25).epsilon(1e-9));
  }
}

TEST_CASE("vmo diagnostics")
{
  const auto geo = rank_one(0.5);
  VmoSweep sweep;
  sweep.domain = interval(-4, 4);
  const auto smooth = vmo_diagnostics(geo, fields::gaussian_bump(make_point1(0.5), 1.0), BmoVariant::Dunkl, sweep);
  const auto col = smooth.small_r.column(1);
  for (std::size_t i = 1; i < col.size(); ++i) CHECK(col[i] < col[i - 1]);
  CHECK(smooth.small_r.csv().rfind("parameter,sup_oscillation,ball_count\n", 0) == 0);
  const auto far = smooth.far.column(1);
  CHECK(far.back() < 1e-6);

  const auto logv = vmo_diagnostics(geo, fields::log_norm(1), BmoVariant::Central, sweep);
  const auto lc = logv.small_r.column(1);
  // Dilation invariance of log oscillation on central balls: flat curve.
  for (double v : lc) CHECK(v == doctest::Approx(lc.front()).epsilon(1e-6));
  for (double n : logv.small_r.column(2)) CHECK(n >= 1.0);
}
