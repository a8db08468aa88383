#include "dunkl/riesz.hpp"

#include "dunkl/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace dunkl {

const char* to_string(RieszRoute r)
{
  switch (r) {
    case RieszRoute::TimeIntegral: return "time-integral";
    case RieszRoute::Subordinated: return "subordinated";
    case RieszRoute::Classical: return "classical";
  }
  return "?";
}

namespace {
// Orbit images carry rounding from the reflection matrices.
constexpr double kSingularTol = 1e-14;
}  // namespace

RieszKernel::RieszKernel(const HeatKernel& heat, int j, double alpha, TimePlan plan)
    : heat_(&heat), j_(j), alpha_(alpha), plan_(plan)
{
  const int n = heat.geometry().dim();
  if (j < 0 || j >= n) throw std::invalid_argument("component index out of range");
  if (!(alpha > 0.0 && alpha < n))
    throw ExponentViolation("alpha = " + std::to_string(alpha) + " must lie in (0, " + std::to_string(n) + ")");
  const auto& geo = heat.geometry();
  if (geo.trivial_multiplicity())
    primary_ = RieszRoute::Classical;
  else if (n == 1 && geo.is_sign_group())
    primary_ = RieszRoute::Subordinated;
  else
    primary_ = RieszRoute::TimeIntegral;
}

double RieszKernel::c_alpha() const { return 1.0 / std::tgamma(0.5 * (1.0 + alpha_)); }

double RieszKernel::d_kappa_alpha() const
{
  const double N = heat_->homogeneous_dim();
  return std::pow(2.0, 0.5 * (N - alpha_)) * std::tgamma(0.5 * (N + 1.0 - alpha_)) / std::tgamma(0.5 * (1.0 + alpha_));
}

double RieszKernel::classical_constant() const
{
  const double n = geometry().dim();
  return std::pow(2.0, -alpha_) * std::pow(std::numbers::pi, -0.5 * n) * std::tgamma(0.5 * (n + 1.0 - alpha_)) /
         std::tgamma(0.5 * (1.0 + alpha_));
}

double RieszKernel::time_integral(const Point& x, const Point& y) const
{
  const double e = (x - y).norm();
  const double d = geometry().trivial_multiplicity() ? e : geometry().metric(x, y);
  if (!(d > kSingularTol * (x.norm() + y.norm()))) throw SingularPair("time integral on the orbit diagonal");
  const double beta = 0.5 * (alpha_ - 1.0);
  auto log_phi = [&](double s) { return heat_->log_value(std::exp(s), x, y) + beta * s; };

  const double s1 = std::log(plan_.split_factor * d * d);
  const double s2 = std::log(plan_.split_factor * e * e);
  double peak = std::max({log_phi(s1), log_phi(s2), log_phi(0.5 * (s1 + s2))});
  const double drop = std::log(plan_.floor);

  double lo = s1;
  for (int i = 0; i < 400; ++i) {
    const double v = log_phi(lo - 0.5);
    lo -= 0.5;
    peak = std::max(peak, v);
    if (v < peak + drop) break;
  }
  double hi = s2;
  for (int i = 0; i < 400; ++i) {
    const double v = log_phi(hi + 1.0);
    hi += 1.0;
    peak = std::max(peak, v);
    if (v < peak + drop) break;
  }

  const auto breaks = make_breaks(lo, hi, {s1, s2});
  AdaptiveOptions ao;
  ao.rel_tol = plan_.rel_tol;
  ao.max_intervals = 4000;
  const auto r = integrate_adaptive([&](double s) { return std::exp(log_phi(s) - peak); },
                                    std::span<const double>(breaks), ao);
  return r.value * std::exp(peak);
}

namespace {

/// Gauss series 2F1(a, b; c; z) for |z| < 1.
double hyp2f1_series(double a, double b, double c, double z)
{
  long double term = 1.0L, sum = 1.0L;
  for (int n = 0; n < 4000; ++n) {
    term *= static_cast<long double>((a + n) * (b + n)) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-18L * std::abs(sum)) return static_cast<double>(sum);
  }
  throw NoConvergence("hypergeometric series did not converge");
}

/// d^{-2a} 2F1(a, b; c; -Z) with Z = 4|xy| / d^2, evaluated so that d = 0 is
/// allowed whenever the result stays finite (b > a).
double scaled_hyp2f1(double a, double b, double c, double four_xy, double d)
{
  const double d2 = d * d;
  if (d2 > 0.0 && four_xy <= 4.0 * d2) {
    const double Z = four_xy / d2;
    return std::pow(d2, -a) * std::pow(1.0 + Z, -b) * hyp2f1_series(b, c - a, c, Z / (1.0 + Z));
  }
  // Connection formula at infinity; b - a is never an integer here.
  const double w = d2 > 0.0 ? -d2 / four_xy : 0.0;
  const double g1 = std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - a)) * std::tgamma(b - a);
  const double g2 = std::exp(std::lgamma(c) - std::lgamma(a) - std::lgamma(c - b)) * std::tgamma(a - b);
  double v = g1 * std::pow(four_xy, -a) * hyp2f1_series(a, a - c + 1.0, a - b + 1.0, w);
  if (d2 > 0.0)
    v += g2 * std::pow(four_xy, -b) * std::pow(d2, b - a) * hyp2f1_series(b, b - c + 1.0, b - a + 1.0, w);
  else if (b < a)
    throw SingularPair("subordinated integral on the orbit diagonal");
  return v;
}

}  // namespace

double RieszKernel::subordinated_integral(double x, double y) const
{
  const auto& geo = geometry();
  if (geo.dim() != 1 || !geo.is_sign_group()) throw UnsupportedGroup("subordination route is rank one only");
  const double k = geo.axis_multiplicities()[0];
  const double N = 1.0 + 2.0 * k;
  const double a = 0.5 * (N + 1.0 - alpha_);
  const double log_pref = -std::log(heat_->c_kappa()) - 0.5 * N * std::log(2.0) + std::lgamma(a) + a * std::log(4.0);
  if (k == 0.0) {
    if (x == y) throw SingularPair("subordinated integral on the diagonal");
    return std::exp(log_pref - 2.0 * a * std::log(std::abs(x - y)));
  }
  const double xy = x * y;
  if (xy == 0.0) {
    const double A2 = x * x + y * y;
    if (A2 == 0.0) throw SingularPair("subordinated integral at the origin");
    return std::exp(log_pref - a * std::log(A2));
  }
  // int (d^2 + 2|xy| u)^{-a} dw_k(u) is an Euler integral: with the peak
  // exponent k - 1 (xy > 0) or k (xy < 0) it equals d^{-2a} 2F1(a, b; 2k+1; -Z).
  const double d = std::abs(std::abs(x) - std::abs(y));
  const double b = xy > 0.0 ? k : k + 1.0;
  return std::exp(log_pref) * scaled_hyp2f1(a, b, 2.0 * k + 1.0, 4.0 * std::abs(xy), d);
}

double RieszKernel::value(RieszRoute route, const Point& x, const Point& y) const
{
  // At zero multiplicity only the diagonal itself is singular.
  const double d = geometry().trivial_multiplicity() ? (x - y).norm() : geometry().metric(x, y);
  if (!(d > kSingularTol * (x.norm() + y.norm()))) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "Riesz kernel is undefined on the orbit diagonal (x0 = %.17g, y0 = %.17g)", x(0), y(0));
    throw SingularPair(buf);
  }
  const double diff = y(j_) - x(j_);
  if (diff == 0.0) return 0.0;
  const double half_c = 0.5 * c_alpha();
  switch (route) {
    case RieszRoute::Classical: {
      if (!geometry().trivial_multiplicity()) throw UnsupportedGroup("classical route needs zero multiplicity");
      const double n = geometry().dim();
      return -classical_constant() * diff / std::pow((x - y).norm(), n + 1.0 - alpha_);
    }
    case RieszRoute::Subordinated: return -half_c * diff * subordinated_integral(x(0), y(0));
    case RieszRoute::TimeIntegral: return -half_c * diff * time_integral(x, y);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

namespace {

double sup_abs_near(const ScalarField& f, const std::vector<Point>& pts)
{
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, std::abs(f(p)));
  return m;
}

/// Size-estimate bound for the part of the domain within `eps` of the orbit of x.
double floor_bound(const RieszKernel& K, const ScalarField& f, const Point& x, double eps)
{
  const auto& geo = K.geometry();
  const int n = geo.dim();
  const bool classical = geo.trivial_multiplicity();
  const auto orbit = classical ? std::vector<Point>{x} : geo.orbit_of(x);
  double c_size = 0.0;
  std::vector<Point> probes;
  for (const auto& p : orbit) {
    probes.push_back(p);
    for (int i = 0; i < n; ++i)
      for (double sgn : {-1.0, 1.0}) {
        Point y = p;
        y(i) += sgn * eps;
        probes.push_back(y);
        const double d = classical ? (x - y).norm() : geo.metric(x, y);
        if (!(d > 0.0)) continue;
        c_size = std::max(c_size, std::abs(K(x, y)) * ball_measure(geo, x, d) / std::pow(d, K.alpha()));
      }
  }
  // Dyadic shells eps 2^-m contribute C (eps 2^-m)^alpha times the local doubling constant.
  const double doubling = ball_measure(geo, x, eps) / ball_measure(geo, x, 0.5 * eps);
  return static_cast<double>(orbit.size()) * c_size * sup_abs_near(f, probes) * std::pow(eps, K.alpha()) *
         doubling / (1.0 - std::pow(2.0, -K.alpha()));
}

RieszApplyResult apply_rank_one(const RieszKernel& K, const ScalarField& f, double x, const RieszApplyOptions& opt)
{
  const auto& geo = K.geometry();
  const Box& box = *f.support();
  const double a = box.lo(0), b = box.hi(0);
  const Point px = make_point1(x);
  const double alpha = K.alpha();
  auto g = [&](double y) {
    const Point py = make_point1(y);
    const double fv = f(py);
    if (fv == 0.0) return 0.0;
    return K(px, py) * fv * geo.weight(py);
  };

  RieszApplyResult out;
  std::vector<double> cusps{0.0};
  if (!geo.trivial_multiplicity()) cusps.push_back(-x);
  for (const auto& h : f.kinks()) cusps.push_back(h.offset / h.normal(0));

  AdaptiveOptions ao;
  ao.rel_tol = opt.rel_tol;
  ao.max_intervals = 4000;
  ao.throw_on_failure = false;
  // Pieces that stall are accepted when their error is small against the
  // summed magnitude of all pieces.
  double scale = 0.0, stalled = 0.0;
  auto run = [&](double lo, double hi, std::vector<double> extra) {
    if (!(hi > lo)) return;
    extra.insert(extra.end(), cusps.begin(), cusps.end());
    const auto br = make_breaks(lo, hi, std::move(extra));
    const auto r = integrate_adaptive(g, std::span<const double>(br), ao);
    out.value += r.value;
    out.quad_error += r.error;
    scale += std::abs(r.value);
    if (!r.converged) stalled += r.error;
  };
  auto finish = [&]() {
    if (stalled > opt.rel_tol * scale) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "Riesz transform quadrature did not converge at x = %.17g (error %.3e)", x,
                    stalled);
      throw NoConvergence(buf);
    }
    return out;
  };

  if (!(x > a && x < b)) {
    run(a, b, {});
    return finish();
  }

  std::vector<double> all{a, b};
  all.insert(all.end(), cusps.begin(), cusps.end());
  double right = b, left = a;
  for (double c : all) {
    if (c > x) right = std::min(right, c);
    if (c < x) left = std::max(left, c);
  }
  // Jacobi nodes closer to x than ~1e-12 |x| cannot be told apart from x in
  // the orbit metric, so the innermost shell is at least 1e-9 |x| wide.
  const double min_shell = 1e-9 * std::abs(x);
  const double eps_r = std::min(right - x, std::max(opt.shell_floor * (right - x), min_shell));
  const double eps_l = std::min(x - left, std::max(opt.shell_floor * (x - left), min_shell));
  std::vector<double> shells_r, shells_l;
  for (double e = eps_r; e < right - x; e *= 2.0) shells_r.push_back(x + e);
  for (double e = eps_l; e < x - left; e *= 2.0) shells_l.push_back(x - e);

  // Innermost panels: R(x, y) ~ |y - x|^{alpha - 1} is carried by the Jacobi weight.
  const double e1 = alpha - 1.0;
  const double inner_r = jacobi_panel([&](double y) { return g(y) * std::pow(y - x, -e1); }, x, x + eps_r, 0.0, e1, 20);
  const double inner_l = jacobi_panel([&](double y) { return g(y) * std::pow(x - y, -e1); }, x - eps_l, x, e1, 0.0, 20);
  out.value += inner_r + inner_l;
  scale += std::abs(inner_r) + std::abs(inner_l);

  run(a, x - eps_l, shells_l);
  run(x + eps_r, b, shells_r);
  out.floor_bound = floor_bound(K, f, px, std::max(eps_l, eps_r));
  return finish();
}

RieszApplyResult apply_general(const RieszKernel& K, const ScalarField& f, const Point& x, const RieszApplyOptions& opt)
{
  const auto& geo = K.geometry();
  const int n = geo.dim();
  const Box& box = *f.support();
  const double outer = (box.hi - box.lo).maxCoeff();
  const double eps = opt.shell_floor * outer;
  const auto orbit = geo.trivial_multiplicity() ? std::vector<Point>{x} : geo.orbit_of(x);

  std::vector<Hyperplane> hints = f.kinks();
  for (const auto& p : orbit)
    for (int i = 0; i < n; ++i) {
      Point e = Point::Zero(n);
      e(i) = 1.0;
      for (double r = eps; r < outer; r *= 2.0) {
        hints.push_back({e, p(i) - r});
        hints.push_back({e, p(i) + r});
      }
    }
  Region region = Region::box(box);
  region.exclude(orbit, eps);
  MeasureOptions mo;
  mo.rel_tol = opt.rel_tol;
  mo.max_intervals = 4000;
  const Integrand g = [&](const Point& y) {
    const double fv = f(y);
    return fv == 0.0 ? 0.0 : K(x, y) * fv;
  };
  const auto r = integrate(geo, g, region, std::span<const Hyperplane>(hints), mo);
  return {r.value, r.error, floor_bound(K, f, x, eps)};
}

}  // namespace

RieszApplyResult riesz_apply_at(const RieszKernel& K, const ScalarField& f, const Point& x, const RieszApplyOptions& opt)
{
  if (f.is_constant() && *f.constant_value() == 0.0) return {};
  if (!f.support()) throw std::invalid_argument("riesz_apply needs a field with declared support");
  if (K.geometry().dim() == 1) return apply_rank_one(K, f, x(0), opt);
  return apply_general(K, f, x, opt);
}

ScalarField riesz_apply(const RieszKernel& K, const ScalarField& f, const RieszApplyOptions& opt)
{
  const RieszKernel* kp = &K;
  return ScalarField([kp, f, opt](const Point& x) { return riesz_apply_at(*kp, f, x, opt).value; });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> flatten(std::initializer_list<const Point*> pts)
{
  std::vector<double> v;
  for (const Point* p : pts) v.insert(v.end(), p->data(), p->data() + p->size());
  return v;
}

}  // namespace

RatioStats size_ratios(const RieszKernel& K, const std::vector<KernelPair>& pairs)
{
  std::vector<double> vals;
  std::vector<std::vector<double>> where;
  for (const auto& [x, y] : pairs) {
    const double d = K.geometry().metric(x, y);
    vals.push_back(std::abs(K(x, y)) * ball_measure(K.geometry(), x, d) / std::pow(d, K.alpha()));
    where.push_back(flatten({&x, &y}));
  }
  return RatioStats::from(vals, where);
}

VerificationReport size_estimate_ratio(const RieszKernel& K, const std::vector<KernelPair>& pairs)
{
  VerificationReport rep{"riesz-size", "size condition", {}, {}, {}};
  try {
    const auto st = size_ratios(K, pairs);
    rep.stats["size_ratio"] = st;
    rep.require("sup finite", std::isfinite(st.sup) && st.count > 0, st.sup);
  } catch (const std::exception& e) {
    rep.error("size ratio", e);
  }
  return rep;
}

RatioStats smoothness_ratios(const RieszKernel& K, SmoothnessMode mode, const std::vector<KernelTriple>& samples)
{
  const auto& geo = K.geometry();
  std::vector<double> vals;
  std::vector<std::vector<double>> where;
  for (const auto& s : samples) {
    const double d = geo.metric(s.x, s.y);
    const double shift = (s.moved - (mode == SmoothnessMode::VaryY ? s.y : s.x)).norm();
    if (shift > 0.5 * d) throw RejectedSample("perturbation exceeds d(x, y) / 2");
    if (shift == 0.0) {
      vals.push_back(0.0);
    } else {
      const double r0 = K(s.x, s.y);
      const double r1 = mode == SmoothnessMode::VaryY ? K(s.x, s.moved) : K(s.moved, s.y);
      vals.push_back(std::abs(r0 - r1) * (s.x - s.y).norm() * ball_measure(geo, s.x, d) /
                     (shift * std::pow(d, K.alpha())));
    }
    where.push_back(flatten({&s.x, &s.y, &s.moved}));
  }
  return RatioStats::from(vals, where);
}

VerificationReport smoothness_ratio(const RieszKernel& K, SmoothnessMode mode, const std::vector<KernelTriple>& samples)
{
  const bool vy = mode == SmoothnessMode::VaryY;
  VerificationReport rep{vy ? "riesz-smoothness-y" : "riesz-smoothness-x", "smoothness condition", {}, {}, {}};
  try {
    const auto st = smoothness_ratios(K, mode, samples);
    rep.stats["smoothness_ratio"] = st;
    rep.require("sup finite", std::isfinite(st.sup) && st.count > 0, st.sup);
  } catch (const std::exception& e) {
    rep.error("smoothness ratio", e);
  }
  return rep;
}

namespace {

std::vector<Point> ball_grid(const Point& c, double r, int per_axis)
{
  const int n = static_cast<int>(c.size());
  std::vector<Point> pts;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Point p(n);
    for (int i = 0; i < n; ++i) p(i) = -r + (2.0 * idx[static_cast<std::size_t>(i)] + 1.0) * r / per_axis;
    if (p.norm() < r) pts.push_back(c + p);
    int i = 0;
    while (i < n && ++idx[static_cast<std::size_t>(i)] == per_axis) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return pts;
}

}  // namespace

std::vector<KernelPair> lower_bound_pairs(const RieszKernel& K, const BallSpec& ball, int per_axis)
{
  Point c2 = ball.center;
  c2(K.component()) += 5.0 * ball.radius;
  std::vector<KernelPair> out;
  for (const auto& x : ball_grid(ball.center, ball.radius, per_axis))
    for (const auto& y : ball_grid(c2, ball.radius, per_axis)) out.push_back({x, y});
  return out;
}

VerificationReport kernel_lower_bound_check(const RieszKernel& K, const BallSpec& ball, int per_axis)
{
  VerificationReport rep{"riesz-lower-bound", "kernel lower bound", {}, {}, {}};
  try {
    const auto pairs = lower_bound_pairs(K, ball, per_axis);
    const double scale = ball_measure(K.geometry(), ball.center, ball.radius) / std::pow(ball.radius, K.alpha());
    std::vector<double> vals;
    std::vector<std::vector<double>> where;
    int pos = 0, neg = 0;
    for (const auto& [x, y] : pairs) {
      const double v = K(x, y);
      (v > 0.0 ? pos : neg) += v != 0.0 ? 1 : 0;
      vals.push_back(std::abs(v) * scale);
      where.push_back(flatten({&x, &y}));
    }
    const auto st = RatioStats::from(vals, where);
    rep.stats["lower_ratio"] = st;
    rep.metrics["inf_ratio"] = st.inf;
    rep.metrics["inf_over_sup"] = st.inf / st.sup;
    const bool coherent = (pos == 0 || neg == 0) && pos + neg == static_cast<int>(pairs.size());
    rep.require("sign coherence", coherent, pos - neg);
    rep.require("inf bounded away from zero", st.inf > 0.0 && std::isfinite(st.inf), st.inf);
  } catch (const std::exception& e) {
    rep.error("lower bound", e);
  }
  return rep;
}

std::vector<KernelPair> random_pairs(int dim, int count, double L, double min_d, const Geometry& geo,
                                     std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-L, L);
  std::vector<KernelPair> out;
  while (static_cast<int>(out.size()) < count) {
    Point x(dim), y(dim);
    for (int i = 0; i < dim; ++i) {
      x(i) = U(rng);
      y(i) = U(rng);
    }
    if (geo.metric(x, y) >= min_d) out.push_back({x, y});
  }
  return out;
}

ScalarField random_bump_sum(int dim, std::uint64_t seed, int max_bumps)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, max_bumps);
  std::uniform_real_distribution<double> center(-4.0, 4.0), width(0.2, 2.0);
  std::bernoulli_distribution sign(0.5);
  const int m = count(rng);
  ScalarField out;
  for (int b = 0; b < m; ++b) {
    Point c(dim);
    for (int i = 0; i < dim; ++i) c(i) = center(rng);
    const double w = width(rng);
    const double s = sign(rng) ? 1.0 : -1.0;
    auto bump = fields::gaussian_bump(c, w, s);
    out = b == 0 ? bump : fields::sum(out, bump);
  }
  return out;
}

std::vector<ScalarField> bump_family(int dim, int count, std::uint64_t seed)
{
  std::vector<ScalarField> fam;
  for (int i = 0; i < count; ++i) fam.push_back(random_bump_sum(dim, seed + static_cast<std::uint64_t>(i)));
  return fam;
}

// ---------------------------------------------------------------------------

double lp_norm(const Geometry& geo, const ScalarField& f, double p, double rel_tol)
{
  if (!f.support()) throw std::invalid_argument("lp_norm needs a field with declared support");
  MeasureOptions mo;
  mo.rel_tol = rel_tol;
  mo.max_intervals = 4000;
  const Integrand g = [&](const Point& x) { return std::pow(std::abs(f(x)), p); };
  const auto kinks = f.kinks();
  const auto r = integrate(geo, g, Region::box(*f.support()), std::span<const Hyperplane>(kinks), mo);
  return std::pow(r.value, 1.0 / p);
}

double riesz_lq_norm(const RieszKernel& K, const ScalarField& f, double q, const NormOptions& opt)
{
  const auto& geo = K.geometry();
  if (geo.dim() != 1) throw UnsupportedGroup("L^q norms of the Riesz transform are computed in rank one");
  if (!f.support()) throw std::invalid_argument("riesz_lq_norm needs a field with declared support");
  const double k = geo.is_sign_group() ? geo.axis_multiplicities()[0] : 0.0;
  const double N = 1.0 + 2.0 * k;
  const double M = std::max(std::abs(f.support()->lo(0)), std::abs(f.support()->hi(0)));
  const double L = opt.reach * M;
  const double decay = q * (N - K.alpha()) - N;
  if (!(decay > 0.0)) throw ExponentViolation("q (N - alpha) must exceed N");

  RieszApplyOptions ao;
  ao.rel_tol = std::min(1e-8, 0.01 * opt.rel_tol);
  auto Rf = [&](double x) { return riesz_apply_at(K, f, make_point1(x), ao).value; };
  auto g = [&](double x) { return std::pow(std::abs(Rf(x)), q) * std::pow(2.0, k) * std::pow(std::abs(x), 2.0 * k); };

  std::vector<double> br{0.0, f.support()->lo(0), f.support()->hi(0)};
  for (double r = M; r < L; r *= 2.0) {
    br.push_back(r);
    br.push_back(-r);
  }
  const auto breaks = make_breaks(-L, L, br);
  AdaptiveOptions qo;
  qo.rel_tol = opt.rel_tol;
  qo.max_intervals = 4000;
  double total = integrate_adaptive(g, std::span<const double>(breaks), qo).value;
  // Beyond L, |R f(x)| ~ |R f(L)| (L/|x|)^{N - alpha}.
  for (double s : {-L, L}) total += std::pow(std::abs(Rf(s)), q) * std::pow(2.0, k) * std::pow(L, N) / decay;
  return std::pow(total, 1.0 / q);
}

VerificationReport lp_lq_norm_ratio(const RieszKernel& K, const std::vector<ScalarField>& family, const Exponents& e,
                                    const std::vector<double>& dilations, const NormOptions& opt)
{
  check_exponents(K, e);
  VerificationReport rep{"riesz-lp-lq", "Lp to Lq boundedness", {}, {}, {}};
  const auto& geo = K.geometry();
  std::vector<double> ratios, drift;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& f = family[i];
    try {
      const double nf = lp_norm(geo, f, e.pv());
      if (!(nf > 0.0)) {
        rep.inform("skipped zero member " + std::to_string(i), 0.0);
        continue;
      }
      const double r = riesz_lq_norm(K, f, e.qv(), opt) / nf;
      ratios.push_back(r);
      for (double t : dilations) {
        const auto ft = fields::dilated(f, t);
        const double rt = riesz_lq_norm(K, ft, e.qv(), opt) / lp_norm(geo, ft, e.pv());
        drift.push_back(std::abs(rt - r) / r);
      }
    } catch (const std::exception& ex) {
      rep.error("member " + std::to_string(i), ex);
    }
  }
  if (ratios.empty()) {
    rep.require("nonempty family", false, 0.0, "no member with nonzero norm");
    return rep;
  }
  rep.stats["norm_ratio"] = RatioStats::from(ratios);
  rep.metrics["max_ratio"] = *std::max_element(ratios.begin(), ratios.end());
  rep.require("ratio finite", std::isfinite(rep.metrics["max_ratio"]), rep.metrics["max_ratio"]);
  if (!drift.empty()) {
    const double worst = *std::max_element(drift.begin(), drift.end());
    rep.metrics["dilation_drift"] = worst;
    rep.require_at_most("dilation invariance", worst, 1e-3);
  }
  return rep;
}

void check_exponents(const RieszKernel& K, const Exponents& e)
{
  const double N = K.geometry().homogeneous_dim();
  if (std::abs(e.alpha.value() - K.alpha()) > 1e-12 || std::abs(e.hom_dim.value() - N) > 1e-12 ||
      e.dim != K.geometry().dim())
    throw ExponentViolation("exponents were built for alpha = " + e.alpha.str() + ", N = " + e.hom_dim.str() +
                            " but the kernel has alpha = " + std::to_string(K.alpha()) +
                            ", N = " + std::to_string(N));
}

VerificationReport pointwise_maximal_bound_check(const RieszKernel& K, const ScalarField& f, const Exponents& e,
                                                 const std::vector<Point>& samples, const PointwiseOptions& opt)
{
  check_exponents(K, e);
  VerificationReport rep{"riesz-pointwise", "pointwise bound via the maximal function", {}, {}, {}};
  const auto& geo = K.geometry();
  const double p = e.pv(), q = e.qv();
  const bool zero = f.is_constant() && *f.constant_value() == 0.0;
  std::vector<double> ratios;
  std::vector<std::vector<double>> where;
  try {
    const double nf = zero ? 0.0 : lp_norm(geo, f, p);
    rep.metrics["norm_f"] = nf;
    for (const auto& x : samples) {
      double lhs = 0.0, rhs = 0.0;
      if (!zero) {
        lhs = std::abs(riesz_apply_at(K, f, x, opt.apply).value);
        double sum = 0.0;
        for (const auto& sx : geo.orbit_of(x))
          sum += hl_maximal(geo, f, sx, BallFamily::around(geo, sx, opt.k_min, opt.k_max));
        rhs = std::pow(nf, 1.0 - p / q) * std::pow(sum, p / q);
      }
      ratios.push_back(rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0));
      where.emplace_back(x.data(), x.data() + x.size());
    }
  } catch (const std::exception& ex) {
    rep.error("pointwise bound", ex);
    return rep;
  }
  const auto st = RatioStats::from(ratios, where);
  rep.stats["ratio"] = st;
  rep.metrics["sup_ratio"] = st.sup;
  rep.require("ratio finite", std::isfinite(st.sup), st.sup);
  return rep;
}

}  // namespace dunkl
