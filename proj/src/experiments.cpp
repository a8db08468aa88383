#include "dunkl/commutator.hpp"
#include "dunkl/harness.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dunkl {

namespace {

using Rng = std::mt19937_64;

/// Copies checks (prefixed), metrics and stats of `sub` into `out`.
void absorb(VerificationReport& out, const VerificationReport& sub, const std::string& prefix)
{
  for (auto c : sub.checks) {
    c.name = prefix + ": " + c.name;
    out.checks.push_back(std::move(c));
  }
  for (const auto& [k, v] : sub.metrics) out.metrics[prefix + "." + k] = v;
  for (const auto& [k, v] : sub.stats) out.stats[prefix + "." + k] = v;
}

Point uniform_point(Rng& rng, int dim, double L)
{
  std::uniform_real_distribution<double> u(-L, L);
  Point p(dim);
  for (int i = 0; i < dim; ++i) p(i) = u(rng);
  return p;
}

Point diagonal(int dim, double v) { return Point::Constant(dim, v); }

bool not_rank_one(const RunContext& ctx, VerificationReport& rep)
{
  if (ctx.rank_one()) return false;
  rep.inform("not applicable", 0.0, "operator experiments run in rank one only");
  return true;
}

// ---------------------------------------------------------------------------

void reflection_group(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const auto& geo = ctx.geometry;
  const int d = geo.dim();
  const std::size_t order = std::size_t{1} << d;
  rep.metrics["group_order"] = static_cast<double>(geo.group().size());
  rep.require("group order", geo.group().size() == order, static_cast<double>(geo.group().size()));
  const double N = geo.homogeneous_dim();
  rep.metrics["hom_dim"] = N;
  rep.require_at_most("homogeneous dimension", std::abs(N - ctx.config.hom_dim().value()), 1e-12);

  Rng rng(ctx.config.seed);
  std::size_t bad_orbit = 0;
  double sym = 0.0, orbit_gap = 0.0, over = 0.0, triangle = 0.0;
  for (int i = 0; i < ctx.config.samples; ++i) {
    const Point x = uniform_point(rng, d, 3.0), y = uniform_point(rng, d, 3.0), z = uniform_point(rng, d, 3.0);
    if (geo.orbit_of(x).size() != order) ++bad_orbit;
    const double dxy = geo.metric(x, y);
    sym = std::max(sym, std::abs(dxy - geo.metric(y, x)));
    over = std::max(over, dxy - (x - y).norm());
    triangle = std::max(triangle, geo.metric(x, z) - dxy - geo.metric(y, z));
    for (const auto& g : geo.group()) orbit_gap = std::max(orbit_gap, geo.metric(x, Point(g * x)));
  }
  rep.require("generic orbits are free", bad_orbit == 0, static_cast<double>(bad_orbit));
  rep.require_at_most("metric symmetry", sym, 1e-14);
  rep.require_at_most("metric below Euclidean distance", over, 1e-14);
  rep.require_at_most("metric triangle inequality", triangle, 1e-12);
  rep.require_at_most("metric vanishes on orbits", orbit_gap, 1e-12);
}

void dunkl_kernel_checks(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const auto& geo = ctx.geometry;
  const int d = geo.dim();
  Rng rng(ctx.config.seed + 1);
  double expo = 0.0, sym = 0.0, origin = 0.0;
  for (int i = 0; i < 4 * ctx.config.samples; ++i) {
    const Point x = uniform_point(rng, d, 2.0), y = uniform_point(rng, d, 2.0);
    const double e = dunkl_kernel(geo, x, y);
    expo = std::max(expo, std::abs(e - std::exp(x.dot(y))) / std::exp(x.dot(y)));
    sym = std::max(sym, std::abs(e - dunkl_kernel(geo, y, x)) / std::abs(e));
    origin = std::max(origin, std::abs(dunkl_kernel(geo, x, Point::Zero(d)) - 1.0));
  }
  rep.require_at_most("symmetry", sym, 1e-12);
  rep.require_at_most("value one at the origin", origin, 0.0);
  if (geo.trivial_multiplicity())
    rep.require_at_most("exponential at zero multiplicity", expo, 1e-12);
  else
    rep.inform("distance to the exponential", expo);
  std::vector<double> ks = geo.axis_multiplicities();
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (double k : ks)
    if (k > 0.0) rep.require_at_most("Rosler measure route, k = " + std::to_string(k), validate_rosler(k), 1e-6);
}

// ---------------------------------------------------------------------------

void measure_geometry(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const auto& geo = ctx.geometry;
  const int d = geo.dim();
  const double N = geo.homogeneous_dim();
  Rng rng(ctx.config.seed + 2);
  std::uniform_real_distribution<double> lr(std::log(0.05), std::log(2.0));

  double scaling = 0.0, doubling = 0.0;
  for (int i = 0; i < ctx.config.samples; ++i) {
    const Point x = uniform_point(rng, d, 2.0);
    const double r = std::exp(lr(rng));
    const double v = ball_measure(geo, x, r);
    scaling = std::max(scaling, std::abs(ball_measure(geo, Point(2.0 * x), 2.0 * r) - std::pow(2.0, N) * v) /
                                    (std::pow(2.0, N) * v));
    doubling = std::max(doubling, ball_measure(geo, x, 2.0 * r) / v);
  }
  rep.metrics["doubling_sup"] = doubling;
  rep.require_at_most("scaling", scaling, 1e-5, "omega(B(2x, 2r)) = 2^N omega(B(x, r))");
  rep.require_at_most("doubling", doubling, std::pow(2.0, N) * (1.0 + 1e-5));

  std::size_t violated = 0;
  double lower_c = 1e300, upper_c = 1e300;
  std::uniform_real_distribution<double> lr2(std::log(0.01), std::log(4.0));
  for (int i = 0; i < 200; ++i) {
    const Point x = uniform_point(rng, d, 3.0);
    double r1 = std::exp(lr2(rng)), r2 = std::exp(lr2(rng));
    if (r1 < r2) std::swap(r1, r2);
    const auto g = growth_check(geo, x, r1, r2);
    if (g.violated) ++violated;
    lower_c = std::min(lower_c, g.lower_constant);
    upper_c = std::min(upper_c, g.upper_constant);
  }
  rep.metrics["growth_lower_constant_min"] = lower_c;
  rep.metrics["growth_upper_constant_min"] = upper_c;
  rep.require("growth sandwich", violated == 0, static_cast<double>(violated), "200 samples");

  // omega(B(x, r)) / (r^N prod (|<a, x>| + r)^k) over a grid and its refinement.
  auto bracket = [&](int nx, int nr) {
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < nr; ++j) {
        const Point x = diagonal(d, -3.0 + 6.0 * i / (nx - 1));
        const double r = std::exp(std::log(0.01) + (std::log(10.0) - std::log(0.01)) * j / (nr - 1));
        const double q = ball_measure(geo, x, r) / surrogate_volume(geo, x, r);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    return std::pair{lo, hi};
  };
  const auto [lo1, hi1] = bracket(9, 9);
  const auto [lo2, hi2] = bracket(17, 17);
  rep.metrics["surrogate_inf"] = lo2;
  rep.metrics["surrogate_sup"] = hi2;
  rep.require_at_most("surrogate bracket stable (sup)", std::abs(hi2 / hi1 - 1.0), 0.1);
  rep.require_at_most("surrogate bracket stable (inf)", std::abs(lo2 / lo1 - 1.0), 0.1);
}

// ---------------------------------------------------------------------------

void heat_axioms(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const auto& geo = ctx.geometry;
  const auto& h = ctx.heat;
  const int d = geo.dim();
  Rng rng(ctx.config.seed + 3);
  std::uniform_real_distribution<double> lt(std::log(0.01), std::log(10.0)), lt2(std::log(0.25), std::log(2.0));

  double sym = 0.0, gauss = 0.0, route = 0.0;
  std::size_t nonpositive = 0;
  for (int i = 0; i < 100; ++i) {
    const double t = std::exp(lt(rng));
    const Point x = uniform_point(rng, d, 4.0), y = uniform_point(rng, d, 4.0);
    // Compared in log space.
    const double a = h.log_value(t, x, y), b = h.log_value(t, y, x);
    if (!std::isfinite(a) || h(t, x, y) < 0.0) ++nonpositive;
    sym = std::max(sym, std::abs(a - b));
    if (geo.trivial_multiplicity()) {
      const double g = -0.5 * d * std::log(4.0 * std::numbers::pi * t) - (x - y).squaredNorm() / (4.0 * t);
      gauss = std::max(gauss, std::abs(std::expm1(a - g)));
    }
    // Spectral route pairs: |x_i - y_i|^2 <= 40 s.
    const double s = std::exp(lt2(rng));
    std::uniform_real_distribution<double> off(-std::sqrt(40.0 * s), std::sqrt(40.0 * s));
    Point y2 = x;
    for (int j = 0; j < d; ++j) y2(j) += off(rng);
    route = std::max(route, h.cross_validate(HeatRoute::Spectral, s, x, y2, INFINITY));
  }
  rep.require_at_most("symmetry", sym, 1e-8);
  rep.require("positivity", nonpositive == 0, static_cast<double>(nonpositive));
  rep.require_at_most("dual-route agreement", route, 1e-5, "spectral route, 100 samples, |x_i - y_i|^2 <= 40 s");
  if (geo.trivial_multiplicity()) rep.require_at_most("Gaussian at zero multiplicity", gauss, 1e-8);

  double mass = 0.0;
  HeatApplyOptions mo;
  mo.rel_tol = 1e-7;
  for (double t : {0.05, 1.0, 4.0})
    for (double x : {0.0, 0.7, -3.0}) mass = std::max(mass, std::abs(heat_mass(h, t, diagonal(d, x), mo) - 1.0));
  rep.require_at_most("unit mass", mass, 1e-5);

  if (!ctx.rank_one()) {
    rep.inform("semigroup", 0.0, "checked in rank one only");
    return;
  }
  const auto f = fields::gaussian_bump(make_point1(0.8), 0.5);
  const double s = 0.3, t = 0.5;
  double semi = 0.0;
  for (double x : {-0.5, 0.4, 1.2}) {
    ScalarField Htf([&](const Point& y) { return heat_apply(h, f, t, y, {1e-9}); });
    const double lhs = heat_apply(h, Htf, s, make_point1(x), {1e-7});
    const double rhs = heat_apply(h, f, s + t, make_point1(x), {1e-9});
    semi = std::max(semi, std::abs(lhs - rhs) / std::abs(rhs));
  }
  rep.require_at_most("semigroup", semi, 1e-4, "H_s H_t f = H_{s+t} f");
}

void heat_gaussian_bounds(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const int d = ctx.geometry.dim();
  const int nt = d == 1 ? 17 : 9, nx = d == 1 ? 37 : 7;
  const double L = d == 1 ? 5.0 : 3.0;
  const auto base = gaussian_bounds(ctx.heat, heat_grid(d, 1e-2, 1e2, nt, L, nx));
  const auto fine = gaussian_bounds(ctx.heat, heat_grid_doubled(d, 1e-2, 1e2, nt, L, nx), base.c_upper, base.c_lower);
  rep.metrics["c_upper"] = base.c_upper;
  rep.metrics["c_lower"] = base.c_lower;
  rep.stats["upper"] = base.upper;
  rep.stats["lower"] = base.lower;
  rep.stats["upper_doubled"] = fine.upper;
  rep.stats["lower_doubled"] = fine.lower;
  rep.require("upper ratio sup finite", std::isfinite(base.upper.sup) && std::isfinite(fine.upper.sup), base.upper.sup);
  rep.require("lower ratio inf positive", base.lower.inf > 0.0 && fine.lower.inf > 0.0, base.lower.inf);
  rep.require_at_most("upper sup stable under grid doubling", std::abs(fine.upper.sup / base.upper.sup - 1.0), 0.1);
  rep.require_at_most("lower inf stable under grid doubling", std::abs(fine.lower.inf / base.lower.inf - 1.0), 0.1);
}

// ---------------------------------------------------------------------------

void classical_reduction(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const auto& geo = ctx.geometry;
  const auto& K = *ctx.riesz;
  rep.metrics["c_alpha"] = K.c_alpha();
  rep.metrics["d_kappa_alpha"] = K.d_kappa_alpha();
  if (!geo.trivial_multiplicity()) {
    rep.inform("not applicable", 0.0, "nonzero multiplicity");
    return;
  }
  // Gaussian time integral in closed form.
  const int n = geo.dim();
  const double alpha = K.alpha(), a = 0.5 * (n + 1.0 - alpha);
  double worst = 0.0, worst_time = 0.0;
  for (const auto& [x, y] : random_pairs(n, 100, 3.0, 1e-2, geo, ctx.config.seed + 4)) {
    const double r2 = (x - y).squaredNorm();
    const double I = std::pow(4.0 * std::numbers::pi, -0.5 * n) * std::tgamma(a) * std::pow(4.0 / r2, a);
    const double oracle = -0.5 / std::tgamma(0.5 * (1.0 + alpha)) * (y(0) - x(0)) * I;
    if (oracle == 0.0) continue;
    worst = std::max(worst, std::abs(K(x, y) - oracle) / std::abs(oracle));
    worst_time = std::max(worst_time, std::abs(K.value(RieszRoute::TimeIntegral, x, y) - oracle) / std::abs(oracle));
  }
  rep.require_at_most("kernel against the closed form", worst, 1e-5, "100 pairs");
  rep.require_at_most("time integral against the closed form", worst_time, 1e-5, "100 pairs");
  rep.metrics["classical_constant"] = K.classical_constant();
}

void size_and_smoothness(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const auto& geo = ctx.geometry;
  const auto& K = *ctx.riesz;
  const int d = geo.dim();
  const int n = 4 * ctx.config.samples;
  const auto pairs = random_pairs(d, n, 3.0, 1e-2, geo, ctx.config.seed + 5);
  const auto pairs2 = random_pairs(d, 2 * n, 3.0, 1e-2, geo, ctx.config.seed + 5);
  absorb(rep, size_estimate_ratio(K, pairs), "size");
  const double s1 = size_ratios(K, pairs).sup, s2 = size_ratios(K, pairs2).sup;
  rep.metrics["size_sup"] = s1;
  rep.metrics["size_sup_refined"] = s2;
  rep.require_at_most("size sup stable under refinement", std::abs(s2 / s1 - 1.0), 0.1);

  Rng rng(ctx.config.seed + 6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<KernelTriple> vy, vx;
  for (const auto& [x, y] : pairs) {
    Point dir(d);
    for (int i = 0; i < d; ++i) dir(i) = u(rng);
    dir.normalize();
    const double step = 0.25 * geo.metric(x, y) * std::abs(u(rng));
    vy.push_back({x, y, y + step * dir});
    vx.push_back({x, y, x + step * dir});
  }
  absorb(rep, smoothness_ratio(K, SmoothnessMode::VaryY, vy), "smoothness in y");
  absorb(rep, smoothness_ratio(K, SmoothnessMode::VaryX, vx), "smoothness in x");
}

void kernel_lower_bound(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const int d = ctx.geometry.dim();
  const std::vector<std::pair<double, double>> balls{{2.0, 0.05}, {-2.0, 0.05}, {0.0, 0.05}, {0.0, 0.5}};
  double inf = 1e300, spread = 1.0;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto [c, r] = balls[i];
    const BallSpec B{diagonal(d, c), r};
    const auto big = kernel_lower_bound_check(*ctx.riesz, B, d == 1 ? 7 : 4);
    const auto small = kernel_lower_bound_check(*ctx.riesz, {B.center, 0.1 * r}, d == 1 ? 7 : 4);
    const std::string tag = "B" + std::to_string(i);
    absorb(rep, big, tag);
    absorb(rep, small, tag + "/10");
    if (big.metrics.count("inf_ratio") && small.metrics.count("inf_ratio")) {
      const double q = small.metrics.at("inf_ratio") / big.metrics.at("inf_ratio");
      spread = std::max({spread, q, 1.0 / q});
      inf = std::min({inf, big.metrics.at("inf_ratio"), small.metrics.at("inf_ratio")});
    }
  }
  rep.metrics["inf_ratio"] = inf;
  rep.metrics["shrink_spread"] = spread;
  rep.require_at_most("inf ratio stable when r shrinks by 10", spread, 2.0);
}

void pointwise_bound(const RunContext& ctx, Outcome& out)
{
  if (not_rank_one(ctx, out.report)) return;
  const int d = 1;
  std::vector<Point> xs;
  const int n = std::max(4, ctx.config.samples / 3);
  for (int i = 0; i < n; ++i) xs.push_back(diagonal(d, -3.0 + 6.0 * (i + 0.37) / n));
  PointwiseOptions po;
  po.apply = ctx.apply;
  absorb(out.report,
         pointwise_maximal_bound_check(*ctx.riesz, fields::gaussian_bump(diagonal(d, 0.5), 0.4), ctx.exponents, xs, po),
         "gaussian");
  absorb(out.report,
         pointwise_maximal_bound_check(*ctx.riesz, fields::zero(d), ctx.exponents, xs, po), "zero");
  out.report.require("zero function gives zero", out.report.metrics.at("zero.sup_ratio") == 0.0,
                     out.report.metrics.at("zero.sup_ratio"));
}

void lp_lq(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  const auto& e = ctx.exponents;
  const Rational upper = e.hom_dim / e.alpha;
  for (const Rational& p : {Rational(1), upper, upper + Rational(1, 2)}) {
    bool rejected = false;
    try {
      make_exponents(e.alpha, p, e.hom_dim, e.dim);
    } catch (const ExponentViolation&) {
      rejected = true;
    }
    rep.require("exponent guard rejects p = " + p.str(), rejected, p.value());
  }
  if (not_rank_one(ctx, rep)) return;
  absorb(rep, lp_lq_norm_ratio(*ctx.riesz, bump_family(1, 3, ctx.config.seed + 7), e), "bumps");
}

// ---------------------------------------------------------------------------

void bmo_algebra(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  if (not_rank_one(ctx, rep)) return;
  const auto& geo = ctx.geometry;
  const auto fam = BallFamily::dyadic({make_point1(-4.0), make_point1(4.0)}, -3, 2);
  const auto b = fields::log_norm(1);
  rep.metrics["family_size"] = static_cast<double>(fam.size());
  for (BmoVariant v : {BmoVariant::Dunkl, BmoVariant::Central, BmoVariant::DunklMetric}) {
    const std::string tag = to_string(v);
    const double base = bmo_norm(geo, b, v, fam);
    rep.metrics[tag + ".log_norm"] = base;
    rep.require(tag + ": constant gives zero", bmo_norm(geo, fields::constant(3.0, 1), v, fam) == 0.0);
    const double twice = bmo_norm(geo, fields::scaled(2.0, b), v, fam);
    const double neg = bmo_norm(geo, fields::scaled(-0.5, b), v, fam);
    const double shift = bmo_norm(geo, fields::sum(b, fields::constant(3.0, 1)), v, fam);
    rep.require_at_most(tag + ": scales under 2b", std::abs(twice - 2.0 * base) / base, 1e-12);
    rep.require_at_most(tag + ": scales under -b/2", std::abs(neg - 0.5 * base) / base, 1e-12);
    rep.require_at_most(tag + ": invariant under b + 3", std::abs(shift - base) / base, 1e-8);
    const auto pm = bmo_pmean_equivalence(geo, b, 2.0, v, fam);
    rep.metrics[tag + ".pmean_ratio"] = pm.ratio;
    rep.require(tag + ": p-mean ratio finite and >= 1", std::isfinite(pm.ratio) && pm.ratio >= 1.0, pm.ratio);
  }
  double worst = 0.0;
  const std::vector<std::pair<double, double>> balls{{0.3, 1.0}, {2.0, 0.5}, {-1.0, 2.0}, {0.0, 0.25}, {-0.2, 3.0}};
  for (const auto& sym : {b, fields::smooth_bump(make_point1(-0.3), 1.0), fields::coordinate(0, 1)})
    for (const auto& [c, r] : balls) {
      const BallSpec B{make_point1(c), r};
      const auto split = median_split(geo, sym, B, median(geo, sym, B));
      worst = std::max({worst, split.above - 0.5, split.below - 0.5});
    }
  rep.metrics["median_excess"] = worst;
  rep.require_at_most("median half-measure inequalities", worst, 1e-6);
}

void vmo_curves(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  if (not_rank_one(ctx, rep)) return;
  VmoSweep sweep;
  sweep.domain = {make_point1(-4.0), make_point1(4.0)};
  const std::vector<std::pair<std::string, ScalarField>> symbols{
      {"smooth", fields::smooth_bump(make_point1(-0.3), 1.0)}, {"log", fields::log_norm(1)}};
  for (const auto& [name, b] : symbols) {
    auto r = vmo_diagnostics(ctx.geometry, b, BmoVariant::Dunkl, sweep);
    for (Table* t : {&r.small_r, &r.large_r, &r.far}) {
      t->name = "vmo_" + name + "_" + t->name;
      const auto osc = t->column(1);
      if (!osc.empty() && osc.front() > 0.0) rep.inform(t->name + " last/first", osc.back() / osc.front());
      out.tables.push_back(std::move(*t));
    }
  }
}

// ---------------------------------------------------------------------------

BmoResult symbol_bmo(const RunContext& ctx, const ScalarField& b)
{
  return bmo_scan(ctx.geometry, b, BmoVariant::DunklMetric,
                  BallFamily::dyadic({make_point1(-8.0), make_point1(8.0)}, -4, 3));
}

void commutator_norm(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  if (not_rank_one(ctx, rep)) return;
  const auto& K = *ctx.riesz;
  const auto b = fields::log_norm(1);
  const std::vector<ScalarField> fam{fields::gaussian_bump(make_point1(0.5), 0.4),
                                     fields::smooth_bump(make_point1(-1.0), 0.8)};
  ProfileOptions po;
  po.apply.shell_floor = ctx.apply.shell_floor;
  const auto base = commutator_norm_estimate(K, b, fam, ctx.exponents, po);
  const auto twice = commutator_norm_estimate(K, fields::scaled(2.0, b), fam, ctx.exponents, po);
  const auto zero = commutator_norm_estimate(K, fields::constant(1.5, 1), fam, ctx.exponents, po);
  const double bmo = symbol_bmo(ctx, b).sup;
  rep.metrics["estimate"] = base.estimate;
  rep.metrics["bmo_d"] = bmo;
  rep.metrics["estimate_over_bmo"] = base.estimate / bmo;
  rep.require("estimate finite and positive", std::isfinite(base.estimate) && base.estimate > 0.0, base.estimate);
  rep.require_at_most("homogeneity under 2b", std::abs(twice.estimate - 2.0 * base.estimate) / base.estimate, 1e-12);
  rep.require("constant symbol gives zero", zero.estimate == 0.0, zero.estimate);
}

void commutator_upper(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  if (not_rank_one(ctx, rep)) return;
  const auto f = fields::gaussian_bump(make_point1(0.5), 0.4);
  std::vector<Point> xs;
  for (double x : {-2.0, -0.7, 0.3, 1.7}) xs.push_back(make_point1(x));
  absorb(rep, upper_bound_experiment(*ctx.riesz, fields::log_norm(1), f, ctx.exponents, xs), "log");
  const auto c = upper_bound_experiment(*ctx.riesz, fields::constant(-2.0, 1), f, ctx.exponents, xs);
  absorb(rep, c, "constant");
  rep.require("constant symbol gives zero ratio", c.metrics.at("sup_ratio") == 0.0, c.metrics.at("sup_ratio"));
}

void commutator_lower(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  if (not_rank_one(ctx, rep)) return;
  const auto& K = *ctx.riesz;
  const auto b = fields::log_norm(1);
  const std::vector<std::pair<double, double>> balls{{0.3, 1.0},  {0.0, 1.0},   {0.0, 0.25}, {-0.2, 0.5}, {0.5, 2.0},
                                                     {0.1, 0.3},  {-0.6, 1.0},  {0.9, 1.5},  {-1.0, 3.0}, {0.05, 0.1}};
  Table table{"commutator_lower", {"center", "radius", "omega_osc", "chain_factor", "C"}, {}};
  double cmin = 1e300, cmax = 0.0;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto [c, r] = balls[i];
    const auto one = lower_bound_experiment(K, b, ctx.exponents, {make_point1(c), r});
    absorb(rep, one, "B" + std::to_string(i));
    if (!one.metrics.count("C")) continue;
    const double C = one.metrics.at("C");
    table.add({c, r, one.metrics.at("omega_osc"), one.metrics.at("chain_factor"), C});
    cmin = std::min(cmin, C);
    cmax = std::max(cmax, C);
  }
  rep.metrics["C_min"] = cmin;
  rep.metrics["C_max"] = cmax;
  rep.require("chain holds on every ball", table.rows.size() == balls.size() && cmin > 0.0,
              static_cast<double>(table.rows.size()));
  out.tables.push_back(std::move(table));

  // b -> 2b - 1 leaves C unchanged; constants give exact zeros.
  const BallSpec B0{make_point1(0.3), 1.0};
  const auto ref = lower_bound_experiment(K, b, ctx.exponents, B0);
  const auto moved = lower_bound_experiment(
      K, fields::linear_combination(2.0, b, -1.0, fields::constant(1.0, 1)), ctx.exponents, B0);
  if (ref.metrics.count("C") && moved.metrics.count("C"))
    rep.require_at_most("C invariant under 2b - 1",
                        std::abs(moved.metrics.at("C") - ref.metrics.at("C")) / ref.metrics.at("C"), 1e-6);
  else
    rep.require("C invariant under 2b - 1", false, 0.0, "chain did not complete");
  const auto zero = lower_bound_experiment(K, fields::constant(4.0, 1), ctx.exponents, B0);
  absorb(rep, zero, "constant");
  rep.require("constant symbol gives exact zeros",
              zero.metrics.at("C") == 0.0 && zero.metrics.at("omega_osc") == 0.0 && zero.metrics.at("chain_sum") == 0.0);
}

void commutator_compactness(const RunContext& ctx, Outcome& out)
{
  auto& rep = out.report;
  if (not_rank_one(ctx, rep)) return;
  const std::vector<ScalarField> fam{fields::gaussian_bump(make_point1(0.5), 0.4),
                                     fields::gaussian_bump(make_point1(-0.4), 0.3), fields::zero(1)};
  auto smooth = compactness_probe(*ctx.riesz, fields::smooth_bump(make_point1(-0.3), 1.0), fam, ctx.exponents);
  absorb(rep, smooth.report, "smooth");
  smooth.tail.name += "_smooth";
  smooth.small_ball.name += "_smooth";
  out.tables.push_back(std::move(smooth.tail));
  out.tables.push_back(std::move(smooth.small_ball));

  ProbeOptions jump;
  jump.expect_decay = false;
  auto sign = compactness_probe(*ctx.riesz, fields::sign_coordinate(0, 1), {fam.front()}, ctx.exponents, jump);
  absorb(rep, sign.report, "sign");
  sign.tail.name += "_sign";
  sign.small_ball.name += "_sign";
  out.tables.push_back(std::move(sign.tail));
  out.tables.push_back(std::move(sign.small_ball));
}

}  // namespace

const std::vector<Experiment>& experiment_registry()
{
  static const std::vector<Experiment> registry{
      {"reflection-group", "reflection group, orbits and orbit distance", Stage::Geometry, reflection_group},
      {"dunkl-kernel", "Dunkl kernel", Stage::Geometry, dunkl_kernel_checks},
      {"measure-geometry", "scaling, doubling and growth of the Dunkl measure", Stage::Measure, measure_geometry},
      {"heat-axioms", "heat kernel properties", Stage::Heat, heat_axioms},
      {"heat-gaussian-bounds", "Gaussian upper and lower bounds", Stage::Heat, heat_gaussian_bounds},
      {"riesz-classical", "classical fractional Riesz kernel", Stage::Riesz, classical_reduction},
      {"lemma-3.1-size", "size condition and smoothness condition", Stage::Riesz, size_and_smoothness},
      {"riesz-lower-bound", "kernel lower bound on separated balls", Stage::Riesz, kernel_lower_bound},
      {"riesz-pointwise", "pointwise bound via the maximal function", Stage::Riesz, pointwise_bound},
      {"riesz-lp-lq", "Lp to Lq boundedness", Stage::Riesz, lp_lq},
      {"bmo-algebra", "bounded mean oscillation and medians", Stage::Bmo, bmo_algebra},
      {"vmo-curves", "vanishing mean oscillation", Stage::Bmo, vmo_curves},
      {"commutator-norm", "commutator bounded by the BMO norm", Stage::Commutator, commutator_norm},
      {"commutator-upper", "sharp maximal function", Stage::Commutator, commutator_upper},
      {"commutator-lower", "lower bound via median split", Stage::Commutator, commutator_lower},
      {"commutator-compactness", "relative compactness", Stage::Commutator, commutator_compactness},
  };
  return registry;
}

}  // namespace dunkl
