#include "dunkl/heat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace dunkl {

const char* to_string(HeatRoute r)
{
  switch (r) {
    case HeatRoute::RadialTranslation: return "radial-translation";
    case HeatRoute::Spectral: return "spectral";
    case HeatRoute::ClassicalGaussian: return "classical-gaussian";
    case HeatRoute::Series: return "series";
  }
  return "?";
}

namespace {

double log_c1(double k) { return (2.0 * k + 0.5) * std::log(2.0) + std::lgamma(k + 0.5); }

double spectral_1d(double k, double t, double x, double y)
{
  const double L = std::sqrt((45.0 + k * std::log1p(45.0 / t)) / t);
  auto g = [&](double xi) {
    const auto ex = dunkl_kernel_imaginary(k, x * xi);
    const auto ey = dunkl_kernel_imaginary(k, y * xi);
    return std::exp(-t * xi * xi) * (ex.re * ey.re + ex.im * ey.im) * std::pow(2.0, k) * std::pow(xi, 2.0 * k);
  };
  // Split into pieces of roughly one oscillation period.
  const double freq = std::max({std::abs(x), std::abs(y), 1e-3});
  const int pieces = std::clamp(static_cast<int>(std::ceil(L * freq / (2.0 * std::numbers::pi))), 1, 400);
  std::vector<double> br;
  for (int i = 0; i <= pieces; ++i) br.push_back(L * i / pieces);
  AdaptiveOptions ao;
  ao.rel_tol = 1e-12;
  ao.max_intervals = 20000;
  ao.throw_on_failure = false;
  const auto r = integrate_adaptive(g, std::span<const double>(br), ao);
  return 2.0 * r.value * std::exp(-2.0 * log_c1(k));
}

}  // namespace

double HeatKernel::log_value_1d(double k, double t, double x, double y)
{
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
  if (k == 0.0) return -0.5 * std::log(4.0 * std::numbers::pi * t) - (x - y) * (x - y) / (4.0 * t);
  const double base = -log_c1(k) - 0.5 * (1.0 + 2.0 * k) * std::log(2.0 * t) -
                      (std::abs(x) - std::abs(y)) * (std::abs(x) - std::abs(y)) / (4.0 * t);
  const double z = x * y / (2.0 * t);
  if (z == 0.0) return base;
  const double az = std::abs(z);
  RoslerMeasure1D mu(k, 1.0);
  const double S = mu.integrate_s([&](double s) { return std::exp(z * s - az); }, z > 0.0 ? 1 : -1, 1.0 / az,
                                  45.0 / az);
  return base + std::log(S);
}

double HeatKernel::value_1d(HeatRoute route, double k, double t, double x, double y)
{
  switch (route) {
    case HeatRoute::ClassicalGaussian:
      if (k != 0.0) throw UnsupportedGroup("classical Gaussian route needs zero multiplicity");
      return std::exp(log_value_1d(0.0, t, x, y));
    case HeatRoute::RadialTranslation: return std::exp(log_value_1d(k, t, x, y));
    case HeatRoute::Series:
      return std::exp(-log_c1(k) - 0.5 * (1.0 + 2.0 * k) * std::log(2.0 * t) - (x * x + y * y) / (4.0 * t)) *
             dunkl_kernel_1d(k, x, y / (2.0 * t));
    case HeatRoute::Spectral: return spectral_1d(k, t, x, y);
  }
  return 0.0;
}

HeatKernel::HeatKernel(const Geometry& geo, HeatRoute primary)
    : geo_(&geo), primary_(primary), classical_(geo.trivial_multiplicity())
{
  if (classical_) {
    c_kappa_ = std::pow(2.0 * std::numbers::pi, 0.5 * geo.dim());
    axis_k_.assign(static_cast<std::size_t>(geo.dim()), 0.0);
    return;
  }
  if (!geo.is_sign_group())
    throw UnsupportedGroup("heat kernels are evaluated for sign-change groups or zero multiplicity only");
  if (primary == HeatRoute::ClassicalGaussian) throw UnsupportedGroup("classical route needs zero multiplicity");
  axis_k_ = geo.axis_multiplicities();
  c_kappa_ = gaussian_normalization_product(axis_k_);
  if (primary == HeatRoute::RadialTranslation)
    for (double k : std::set<double>(axis_k_.begin(), axis_k_.end()))
      if (k > 0.0) validate_rosler(k);
}

double HeatKernel::value(HeatRoute route, double t, const Point& x, const Point& y) const
{
  if (classical_ && route == HeatRoute::ClassicalGaussian)
    return std::pow(4.0 * std::numbers::pi * t, -0.5 * geo_->dim()) * std::exp(-(x - y).squaredNorm() / (4.0 * t));
  if (route == HeatRoute::RadialTranslation) return std::exp(log_value(t, x, y));
  double v = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) v *= value_1d(route, axis_k_[static_cast<std::size_t>(i)], t, x(i), y(i));
  return v;
}

double HeatKernel::log_value(double t, const Point& x, const Point& y) const
{
  double v = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) v += log_value_1d(axis_k_[static_cast<std::size_t>(i)], t, x(i), y(i));
  return v;
}

double HeatKernel::cross_validate(HeatRoute other, double t, const Point& x, const Point& y, double tol) const
{
  const double a = value(primary_, t, x, y), b = value(other, t, x, y);
  const double rel = std::abs(a - b) / std::abs(a);
  if (!(rel <= tol))
    throw RouteDisagreement(std::string("heat kernel routes ") + to_string(primary_) + " and " + to_string(other) +
                            " differ by " + std::to_string(rel));
  return rel;
}

namespace {

Region heat_region(const HeatKernel& h, double t, const Point& x, double reach, std::vector<Hyperplane>& hints)
{
  const auto& geo = h.geometry();
  const int n = geo.dim();
  const double R = std::sqrt(4.0 * t * reach);
  const bool classical = geo.trivial_multiplicity();
  Box b{Point(n), Point(n)};
  for (int i = 0; i < n; ++i) {
    Point e = Point::Zero(n);
    e(i) = 1.0;
    if (classical) {
      b.lo(i) = x(i) - R;
      b.hi(i) = x(i) + R;
      hints.push_back({e, x(i)});
    } else {
      const double ax = std::abs(x(i));
      b.lo(i) = -(ax + R);
      b.hi(i) = ax + R;
      for (double c : {-ax, ax, ax - R, R - ax}) hints.push_back({e, c});
    }
  }
  return Region::box(b);
}

}  // namespace

double heat_apply(const HeatKernel& h, const ScalarField& f, double t, const Point& x, const HeatApplyOptions& opt)
{
  std::vector<Hyperplane> hints = f.kinks();
  Region region = heat_region(h, t, x, opt.reach, hints);
  if (f.support()) region.clip(*f.support());
  MeasureOptions mo;
  mo.rel_tol = opt.rel_tol;
  mo.max_intervals = 4000;
  const Integrand g = [&](const Point& y) {
    const double v = f(y);
    return v == 0.0 ? 0.0 : h(t, x, y) * v;
  };
  return integrate(h.geometry(), g, region, std::span<const Hyperplane>(hints), mo).value;
}

double heat_mass(const HeatKernel& h, double t, const Point& x, const HeatApplyOptions& opt)
{
  return heat_apply(h, fields::constant(1.0, h.geometry().dim()), t, x, opt);
}

namespace {

std::vector<double> linspace(double a, double b, int n)
{
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return v;
}

std::vector<Point> lattice(int dim, double L, int nx)
{
  const auto axis = linspace(-L, L, nx);
  std::vector<Point> pts;
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= axis.size();
  for (std::size_t c = 0; c < total; ++c) {
    Point p(dim);
    std::size_t rem = c;
    for (int i = dim - 1; i >= 0; --i) {
      p(i) = axis[rem % axis.size()];
      rem /= axis.size();
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

std::vector<HeatSample> heat_grid(int dim, double t_lo, double t_hi, int nt, double L, int nx)
{
  std::vector<HeatSample> out;
  const auto pts = lattice(dim, L, nx);
  for (double lt : linspace(std::log(t_lo), std::log(t_hi), nt))
    for (const auto& x : pts)
      for (const auto& y : pts) out.push_back({std::exp(lt), x, y});
  return out;
}

std::vector<HeatSample> heat_grid_doubled(int dim, double t_lo, double t_hi, int nt, double L, int nx)
{
  return heat_grid(dim, t_lo, t_hi, 2 * nt - 1, L, 2 * nx - 1);
}

double ball_measure(const Geometry& geo, const Point& x, double r)
{
  if (geo.dim() == 1 && geo.is_sign_group()) return ball_volume_rank_one(geo.axis_multiplicities()[0], x(0), r);
  if (geo.trivial_multiplicity())
    return std::pow(std::numbers::pi, 0.5 * geo.dim()) / std::tgamma(0.5 * geo.dim() + 1.0) * std::pow(r, geo.dim());
  return ball_volume(geo, x, r);
}

namespace {

struct BoundTerms {
  double log_h, log_vmax, log_vmin, d2_over_t, e2_over_t, log_decay;
};

std::vector<BoundTerms> bound_terms(const HeatKernel& h, const std::vector<HeatSample>& samples)
{
  const auto& geo = h.geometry();
  std::vector<BoundTerms> out;
  out.reserve(samples.size());
  std::map<std::vector<double>, double> volumes;
  auto volume = [&](const Point& x, double r) {
    std::vector<double> key(x.data(), x.data() + x.size());
    key.push_back(r);
    auto it = volumes.find(key);
    if (it == volumes.end()) it = volumes.emplace(std::move(key), ball_measure(geo, x, r)).first;
    return it->second;
  };
  for (const auto& s : samples) {
    const double st = std::sqrt(s.t);
    const double vx = volume(s.x, st), vy = volume(s.y, st);
    const double e = (s.x - s.y).norm(), d = geo.metric(s.x, s.y);
    out.push_back({h.log_value(s.t, s.x, s.y), std::log(std::max(vx, vy)), std::log(std::min(vx, vy)),
                   d * d / s.t, e * e / s.t, 2.0 * std::log1p(e / st)});
  }
  return out;
}

// With b_i >= 0, max_i(a_i + c b_i) and min_i(a_i + c b_i) are nondecreasing
// in c. The upper fit is the largest c in [lo, hi] whose maximum stays within
// log(10) of the maximum at lo; the lower fit is the smallest c whose
// minimum is within log(1/0.99) of the minimum at hi. Both by bisection.
double fit_upper_saturation(const std::vector<double>& a, const std::vector<double>& b, double lo, double hi)
{
  auto top = [&](double c) {
    double mx = -INFINITY;
    for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, a[i] + c * b[i]);
    return mx;
  };
  const double target = top(lo) + std::log(10.0);
  if (top(hi) <= target) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (top(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

double fit_lower_saturation(const std::vector<double>& a, const std::vector<double>& b, double lo, double hi)
{
  auto floor_at = [&](double c) {
    double mn = INFINITY;
    for (std::size_t i = 0; i < a.size(); ++i) mn = std::min(mn, a[i] + c * b[i]);
    return mn;
  };
  const double target = floor_at(hi) + std::log(0.99);
  if (floor_at(lo) >= target) return lo;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (floor_at(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

std::vector<std::vector<double>> locations(const std::vector<HeatSample>& samples)
{
  std::vector<std::vector<double>> where;
  for (const auto& s : samples) {
    std::vector<double> w{s.t};
    for (Eigen::Index i = 0; i < s.x.size(); ++i) w.push_back(s.x(i));
    for (Eigen::Index i = 0; i < s.y.size(); ++i) w.push_back(s.y(i));
    where.push_back(std::move(w));
  }
  return where;
}

}  // namespace

GaussianBoundsResult gaussian_bounds(const HeatKernel& h, const std::vector<HeatSample>& samples, double c_upper,
                                     double c_lower)
{
  const auto terms = bound_terms(h, samples);
  std::vector<double> au, bu, al, bl;
  for (const auto& t : terms) {
    au.push_back(t.log_h + t.log_decay + t.log_vmax);
    bu.push_back(t.d2_over_t);
    al.push_back(t.log_h + t.log_vmin);
    bl.push_back(t.e2_over_t);
  }
  GaussianBoundsResult r;
  r.c_upper = c_upper > 0.0 ? c_upper : fit_upper_saturation(au, bu, 1e-4, 1.0);
  r.c_lower = c_lower > 0.0 ? c_lower : fit_lower_saturation(al, bl, 1e-4, 4.0);
  std::vector<double> up, low;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    up.push_back(std::exp(au[i] + r.c_upper * bu[i]));
    low.push_back(std::exp(al[i] + r.c_lower * bl[i]));
  }
  const auto where = locations(samples);
  r.upper = RatioStats::from(up, where);
  r.lower = RatioStats::from(low, where);
  return r;
}

VerificationReport gaussian_bounds_check(const HeatKernel& h, const std::vector<HeatSample>& samples, double c_upper,
                                         double c_lower)
{
  VerificationReport rep;
  rep.id = "heat-gaussian-bounds";
  const auto r = gaussian_bounds(h, samples, c_upper, c_lower);
  rep.metrics["c_upper"] = r.c_upper;
  rep.metrics["c_lower"] = r.c_lower;
  rep.stats["upper"] = r.upper;
  rep.stats["lower"] = r.lower;
  rep.require("upper ratio sup finite", std::isfinite(r.upper.sup), r.upper.sup);
  rep.require("lower ratio inf positive", std::isfinite(r.lower.inf) && r.lower.inf > 0.0, r.lower.inf);
  return rep;
}

RatioStats holder_ratios(const HeatKernel& h, const std::vector<HolderSample>& samples, double c)
{
  const auto& geo = h.geometry();
  std::vector<double> vals;
  std::vector<std::vector<double>> where;
  for (const auto& s : samples) {
    const double st = std::sqrt(s.t);
    const double dy = (s.y - s.y2).norm();
    if (!(dy < st)) throw RejectedSample("Holder sample needs |y - y'| < sqrt(t)");
    if (dy == 0.0) {
      vals.push_back(0.0);
      where.push_back({s.t});
      continue;
    }
    const double e = (s.x - s.y).norm(), d = geo.metric(s.x, s.y);
    const double V = std::max(ball_measure(geo, s.x, st), ball_measure(geo, s.y, st));
    const double log_env = std::log(dy / st) - 2.0 * std::log1p(e / st) - std::log(V) - c * d * d / s.t;
    const double r1 = std::exp(h.log_value(s.t, s.x, s.y) - log_env);
    const double r2 = std::exp(h.log_value(s.t, s.x, s.y2) - log_env);
    vals.push_back(std::abs(r1 - r2));
    std::vector<double> w{s.t};
    for (const Point* p : {&s.x, &s.y, &s.y2})
      for (Eigen::Index i = 0; i < p->size(); ++i) w.push_back((*p)(i));
    where.push_back(std::move(w));
  }
  return RatioStats::from(vals, where);
}

VerificationReport holder_check(const HeatKernel& h, const std::vector<HolderSample>& samples, double c)
{
  VerificationReport rep;
  rep.id = "heat-holder";
  rep.metrics["c"] = c;
  const auto r = holder_ratios(h, samples, c);
  rep.stats["holder"] = r;
  rep.require("holder ratio sup finite", std::isfinite(r.sup), r.sup);
  return rep;
}

}  // namespace dunkl
