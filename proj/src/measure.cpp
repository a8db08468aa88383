#include "dunkl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dunkl {

namespace {

std::vector<Interval> merge(std::vector<Interval> v)
{
  std::sort(v.begin(), v.end());
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!(iv.second > iv.first)) continue;
    if (!out.empty() && iv.first <= out.back().second)
      out.back().second = std::max(out.back().second, iv.second);
    else
      out.push_back(iv);
  }
  return out;
}

// a \ b for sorted disjoint interval lists.
std::vector<Interval> subtract(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
  std::vector<Interval> out;
  for (auto [lo, hi] : a) {
    double cur = lo;
    for (const auto& h : b) {
      if (h.second <= cur || h.first >= hi) continue;
      if (h.first > cur) out.emplace_back(cur, h.first);
      cur = std::max(cur, h.second);
      if (cur >= hi) break;
    }
    if (cur < hi) out.emplace_back(cur, hi);
  }
  return out;
}

std::vector<Interval> chords(const std::vector<Point>& centers, double r, int level, const Point& prefix)
{
  std::vector<Interval> v;
  for (const auto& c : centers) {
    double rho2 = r * r;
    for (int l = 0; l < level; ++l) rho2 -= (prefix(l) - c(l)) * (prefix(l) - c(l));
    if (rho2 <= 0.0) continue;
    const double rho = std::sqrt(rho2);
    v.emplace_back(c(level) - rho, c(level) + rho);
  }
  return merge(std::move(v));
}

}  // namespace

Region Region::box(Box b)
{
  Region r;
  r.dim_ = b.dim();
  r.box_ = std::move(b);
  return r;
}

Region Region::ball(const Point& center, double radius) { return balls({center}, radius); }

Region Region::balls(std::vector<Point> centers, double radius)
{
  if (centers.empty()) throw std::invalid_argument("ball union needs at least one center");
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  Region r;
  r.dim_ = static_cast<int>(centers.front().size());
  r.centers_ = std::move(centers);
  r.radius_ = radius;
  return r;
}

Region Region::orbit_ball(const Geometry& geo, const Point& x, double radius)
{
  return balls(geo.orbit_of(x), radius);
}

Region Region::from(const Geometry& geo, const BallSpec& b)
{
  return b.kind == BallSpec::Kind::Orbit ? orbit_ball(geo, b.center, b.radius) : ball(b.center, b.radius);
}

Region& Region::exclude(std::vector<Point> centers, double radius)
{
  holes_ = std::move(centers);
  hole_radius_ = radius;
  return *this;
}

Region& Region::clip(const Box& b)
{
  if (box_) {
    box_->lo = box_->lo.cwiseMax(b.lo);
    box_->hi = box_->hi.cwiseMin(b.hi).cwiseMax(box_->lo);
  } else {
    box_ = b;
  }
  return *this;
}

Box Region::bounding_box() const
{
  Box out;
  if (!centers_.empty()) {
    out = {centers_.front().array() - radius_, centers_.front().array() + radius_};
    for (const auto& c : centers_) out = out.hull({c.array() - radius_, c.array() + radius_});
    if (box_) {
      out.lo = out.lo.cwiseMax(box_->lo);
      out.hi = out.hi.cwiseMin(box_->hi).cwiseMax(out.lo);
    }
  } else {
    out = *box_;
  }
  return out;
}

bool Region::contains(const Point& x) const
{
  if (box_ && !box_->contains(x)) return false;
  if (!centers_.empty()) {
    bool in = false;
    for (const auto& c : centers_) in = in || (x - c).norm() < radius_;
    if (!in) return false;
  }
  for (const auto& c : holes_)
    if ((x - c).norm() < hole_radius_) return false;
  return true;
}

std::vector<Interval> Region::section(int level, const Point& prefix) const
{
  std::vector<Interval> out;
  if (!centers_.empty())
    out = chords(centers_, radius_, level, prefix);
  else
    out = {{box_->lo(level), box_->hi(level)}};
  if (box_ && !centers_.empty()) {
    std::vector<Interval> clipped;
    for (auto [a, b] : out) {
      a = std::max(a, box_->lo(level));
      b = std::min(b, box_->hi(level));
      if (b > a) clipped.emplace_back(a, b);
    }
    out = std::move(clipped);
  }
  if (!holes_.empty()) {
    const auto h = chords(holes_, hole_radius_, level, prefix);
    if (level == dim_ - 1) {
      out = subtract(out, h);
    } else {
      // Projection is not reduced by a hole at outer levels, but the inner
      // integral has kinks at the hole's extent.
      std::vector<double> cuts;
      for (const auto& iv : h) {
        cuts.push_back(iv.first);
        cuts.push_back(iv.second);
      }
      std::vector<Interval> split;
      for (auto [a, b] : out) {
        double cur = a;
        for (double c : cuts)
          if (c > cur && c < b) {
            split.emplace_back(cur, c);
            cur = c;
          }
        split.emplace_back(cur, b);
      }
      std::sort(split.begin(), split.end());
      out = std::move(split);
    }
  }
  return out;
}

namespace {

struct Iterated {
  const Geometry& geo;
  const Integrand& f;
  const Region& region;
  std::vector<Hyperplane> planes;
  MeasureOptions opt;
  bool weighted;
  int dim;
  Point x;
  bool inner_ok = true;
  QuadResult last{};

  double level(int l)
  {
    const auto ivs = region.section(l, x);
    if (ivs.empty()) return 0.0;
    std::vector<double> interior;
    for (const auto& iv : ivs) {
      interior.push_back(iv.first);
      interior.push_back(iv.second);
    }
    for (const auto& h : planes) {
      bool resolvable = std::abs(h.normal(l)) > 1e-14;
      for (int m = l + 1; m < dim && resolvable; ++m) resolvable = std::abs(h.normal(m)) <= 1e-14;
      if (!resolvable) continue;
      double rest = h.offset;
      for (int m = 0; m < l; ++m) rest -= h.normal(m) * x(m);
      interior.push_back(rest / h.normal(l));
    }
    const auto breaks = make_breaks(ivs.front().first, ivs.back().second, interior);

    AdaptiveOptions ao;
    ao.rel_tol = l == 0 ? opt.rel_tol : 0.1 * opt.rel_tol;
    ao.abs_tol = l == 0 ? opt.abs_tol : 0.0;
    ao.max_intervals = opt.max_intervals;
    ao.throw_on_failure = false;

    auto inside = [&](double t) {
      for (const auto& iv : ivs)
        if (t >= iv.first && t <= iv.second) return true;
      return false;
    };
    auto g = [&, l](double t) -> double {
      if (!inside(t)) return 0.0;
      x(l) = t;
      if (l + 1 < dim) return level(l + 1);
      const double v = f(x);
      return weighted ? v * geo.weight(x) : v;
    };
    // Gaps between intervals integrate to zero; skip them by only passing
    // breakpoints that bound occupied pieces.
    std::vector<double> br;
    br.reserve(breaks.size());
    QuadResult total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
      if (!inside(mid)) {
        if (br.size() >= 2) total += integrate_adaptive(g, std::span<const double>(br), ao);
        br.clear();
        continue;
      }
      if (br.empty()) br.push_back(breaks[i]);
      br.push_back(breaks[i + 1]);
    }
    if (br.size() >= 2) total += integrate_adaptive(g, std::span<const double>(br), ao);
    if (!total.converged) inner_ok = false;
    if (l == 0) last = total;
    return total.value;
  }


};

}  // namespace

QuadResult integrate(const Geometry& geo, const Integrand& f, const Region& region, std::span<const Hyperplane> kinks,
                     const MeasureOptions& opt, bool weighted)
{
  const int dim = region.dim();
  if (dim != geo.dim()) throw std::invalid_argument("region and geometry dimensions differ");
  Iterated it{geo, f, region, {}, opt, weighted, dim, Point::Zero(dim), true, {}};
  if (weighted)
    for (std::size_t i : geo.roots().positive_indices())
      if (geo.roots().multiplicity(i) != 0.0) it.planes.push_back({geo.roots().root(i), 0.0});
  it.planes.insert(it.planes.end(), kinks.begin(), kinks.end());
  it.level(0);
  QuadResult out = it.last;
  out.converged = out.converged && it.inner_ok;
  if (!out.converged)
    throw NoConvergence("weighted integral did not reach tolerance (estimate " + std::to_string(out.value) +
                        ", error " + std::to_string(out.error) + ")");
  return out;
}

QuadResult integrate(const Geometry& geo, const ScalarField& f, const Region& region, const MeasureOptions& opt)
{
  Region r = region;
  if (f.support()) r.clip(f.support()->grown(0.0));
  const Integrand g = [&f](const Point& x) { return f(x); };
  return integrate(geo, g, r, std::span<const Hyperplane>(f.kinks()), opt, true);
}

double ball_volume(const Geometry& geo, const Point& x, double r, const MeasureOptions& opt)
{
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const Integrand one = [](const Point&) { return 1.0; };
  return integrate(geo, one, Region::ball(x, r), {}, opt).value;
}

double orbit_ball_volume(const Geometry& geo, const Point& x, double r, const MeasureOptions& opt)
{
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const Integrand one = [](const Point&) { return 1.0; };
  return integrate(geo, one, Region::orbit_ball(geo, x, r), {}, opt).value;
}

double volume(const Geometry& geo, const BallSpec& b, const MeasureOptions& opt)
{
  return b.kind == BallSpec::Kind::Orbit ? orbit_ball_volume(geo, b.center, b.radius, opt)
                                         : ball_volume(geo, b.center, b.radius, opt);
}

double interval_measure_rank_one(double k, double a, double b)
{
  auto G = [k](double s) { return std::copysign(std::pow(std::abs(s), 2.0 * k + 1.0), s) / (2.0 * k + 1.0); };
  return std::pow(2.0, k) * (G(b) - G(a));
}

double ball_volume_rank_one(double k, double x, double r) { return interval_measure_rank_one(k, x - r, x + r); }

double surrogate_volume(const Geometry& geo, const Point& x, double r)
{
  double v = std::pow(r, geo.dim());
  const auto& R = geo.roots();
  for (std::size_t i = 0; i < R.size(); ++i) v *= std::pow(std::abs(R.root(i).dot(x)) + r, R.multiplicity(i));
  return v;
}

GrowthReport growth_check(const Geometry& geo, const Point& x, double r1, double r2, double C, const MeasureOptions& opt)
{
  if (!(r1 >= r2 && r2 > 0.0)) throw std::invalid_argument("growth_check needs r1 >= r2 > 0");
  GrowthReport g;
  g.ratio = ball_volume(geo, x, r1, opt) / ball_volume(geo, x, r2, opt);
  g.lower_power = std::pow(r1 / r2, geo.dim());
  g.upper_power = std::pow(r1 / r2, geo.homogeneous_dim());
  g.lower_constant = g.ratio / g.lower_power;
  g.upper_constant = g.upper_power / g.ratio;
  const double slack = 1.0 + 10.0 * opt.rel_tol;
  g.violated = g.ratio * C * slack < g.lower_power || g.ratio > C * g.upper_power * slack;
  return g;
}

double gaussian_normalization(const Geometry& geo, double rel_tol)
{
  const int n = geo.dim();
  const double gamma = geo.gamma();
  // h_k(x) <= (sqrt2 |x|)^gamma, so the mass outside B(0, L) is at most
  // 2^{gamma/2} |S^{n-1}| int_L^inf r^m e^{-r^2/2} dr with m = gamma + n - 1,
  // and that tail is below L^{m-1} e^{-L^2/2} / (1 - (m-1)/L^2).
  const double m = gamma + n - 1.0;
  const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  auto tail = [&](double L) {
    const double denom = 1.0 - (m - 1.0) / (L * L);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(2.0, 0.5 * gamma) * sphere * std::pow(L, m - 1.0) * std::exp(-0.5 * L * L) / denom;
  };
  double L = 4.0;
  while (tail(L) > 1e-12) L += 0.5;
  const Integrand g = [](const Point& x) { return std::exp(-0.5 * x.squaredNorm()); };
  MeasureOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_intervals = 4000;
  Box b{Point::Constant(n, -L), Point::Constant(n, L)};
  return integrate(geo, g, Region::box(b), {}, opt).value;
}

double gaussian_normalization_product(const std::vector<double>& axis_k)
{
  double c = 1.0;
  for (double k : axis_k) c *= std::pow(2.0, 2.0 * k + 0.5) * std::tgamma(k + 0.5);
  return c;
}

QuadratureScheme::QuadratureScheme(const Geometry& geo, const Box& box, int nodes_per_axis)
    : box_(box), axis_k_(geo.axis_multiplicities()), order_(2 * nodes_per_axis)
{
  if (!geo.is_sign_group()) throw UnsupportedGroup("tensor quadrature scheme needs a sign-change group");
  const int n = geo.dim();
  std::vector<std::vector<std::pair<double, double>>> axes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double k = axis_k_[static_cast<std::size_t>(i)];
    const double lo = box.lo(i), hi = box.hi(i);
    auto& ax = axes[static_cast<std::size_t>(i)];
    const double scale = std::pow(2.0, k);
    auto add_piece = [&](double a, double b) {
      if (!(b > a)) return;
      const double half = 0.5 * (b - a);
      if (a == 0.0) {
        const auto& rule = gauss_jacobi(nodes_per_axis, 0.0, 2.0 * k);
        const double s = std::pow(half, 1.0 + 2.0 * k);
        for (std::size_t j = 0; j < rule.size(); ++j)
          ax.emplace_back(a + half * (rule.nodes[j] + 1.0), scale * s * rule.weights[j]);
      } else if (b == 0.0) {
        const auto& rule = gauss_jacobi(nodes_per_axis, 2.0 * k, 0.0);
        const double s = std::pow(half, 1.0 + 2.0 * k);
        for (std::size_t j = 0; j < rule.size(); ++j)
          ax.emplace_back(a + half * (rule.nodes[j] + 1.0), scale * s * rule.weights[j]);
      } else {
        const auto& rule = gauss_legendre(nodes_per_axis);
        for (std::size_t j = 0; j < rule.size(); ++j) {
          const double t = a + half * (rule.nodes[j] + 1.0);
          ax.emplace_back(t, scale * std::pow(std::abs(t), 2.0 * k) * half * rule.weights[j]);
        }
      }
    };
    if (k > 0.0 && lo < 0.0 && hi > 0.0) {
      add_piece(lo, 0.0);
      add_piece(0.0, hi);
    } else {
      add_piece(lo, hi);
    }
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::size_t total = 1;
  for (const auto& ax : axes) total *= ax.size();
  nodes_.reserve(total);
  weights_.reserve(total);
  for (std::size_t c = 0; c < total; ++c) {
    Point p(n);
    double w = 1.0;
    std::size_t rem = c;
    for (int i = n - 1; i >= 0; --i) {
      const auto& ax = axes[static_cast<std::size_t>(i)];
      const auto& [t, wi] = ax[rem % ax.size()];
      rem /= ax.size();
      p(i) = t;
      w *= wi;
    }
    nodes_.push_back(std::move(p));
    weights_.push_back(w);
  }
}

double QuadratureScheme::validate() const
{
  const int n = box_.dim();
  auto antider = [](double x, double k, int m) {
    return std::pow(std::abs(x), 2.0 * k) * std::pow(x, m + 1) / (2.0 * k + m + 1.0);
  };
  auto axis_integral = [&](int i, int m) {
    const double k = axis_k_[static_cast<std::size_t>(i)];
    return std::pow(2.0, k) * (antider(box_.hi(i), k, m) - antider(box_.lo(i), k, m));
  };
  auto axis_scale = [&](int i, int m) {
    const double k = axis_k_[static_cast<std::size_t>(i)];
    return std::pow(2.0, k) * (std::abs(antider(box_.hi(i), k, m)) + std::abs(antider(box_.lo(i), k, m)));
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < order_; ++m) {
      double exact = axis_integral(i, m), scale = axis_scale(i, m);
      for (int l = 0; l < n; ++l)
        if (l != i) {
          exact *= axis_integral(l, 0);
          scale *= axis_integral(l, 0);
        }
      const double got = integrate([&](const Point& x) { return std::pow(x(i), m); });
      worst = std::max(worst, std::abs(got - exact) / scale);
    }
  return worst;
}

}  // namespace dunkl
