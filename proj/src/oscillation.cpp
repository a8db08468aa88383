#include "dunkl/oscillation.hpp"

#include "dunkl/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dunkl {

const char* to_string(BallConstraint c)
{
  switch (c) {
    case BallConstraint::All: return "all";
    case BallConstraint::ContainsOrigin: return "contains-origin";
    case BallConstraint::OrbitBalls: return "orbit-balls";
  }
  return "?";
}

const char* to_string(BmoVariant v)
{
  switch (v) {
    case BmoVariant::Dunkl: return "dunkl";
    case BmoVariant::Central: return "central";
    case BmoVariant::DunklMetric: return "dunkl-metric";
  }
  return "?";
}

namespace {

using Lattice = std::vector<std::pair<long, long>>;  // per-axis index range

void enumerate(const Lattice& range, double h, const std::function<void(const Point&)>& visit)
{
  const auto n = static_cast<Eigen::Index>(range.size());
  std::vector<long> m(range.size());
  for (std::size_t i = 0; i < range.size(); ++i) {
    if (range[i].first > range[i].second) return;
    m[i] = range[i].first;
  }
  Point c(n);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) c(i) = static_cast<double>(m[static_cast<std::size_t>(i)]) * h;
    visit(c);
    std::size_t i = 0;
    for (; i < m.size(); ++i) {
      if (++m[i] <= range[i].second) break;
      m[i] = range[i].first;
    }
    if (i == m.size()) return;
  }
}

BallSpec::Kind kind_for(BallConstraint c)
{
  return c == BallConstraint::OrbitBalls ? BallSpec::Kind::Orbit : BallSpec::Kind::Euclidean;
}

/// Balls of radius r with centres on (r/2) Z^N inside `domain`, coarsened
/// to at most max_centres centres.
std::vector<BallSpec> level(const Box& domain, double r, BallConstraint c, std::size_t max_centres)
{
  double h = 0.5 * r;
  Lattice range;
  while (true) {
    range.clear();
    double count = 1.0;
    for (Eigen::Index i = 0; i < domain.lo.size(); ++i) {
      const long a = static_cast<long>(std::ceil(domain.lo(i) / h));
      const long b = static_cast<long>(std::floor(domain.hi(i) / h));
      range.emplace_back(a, b);
      count *= static_cast<double>(std::max(0L, b - a + 1));
    }
    if (count <= static_cast<double>(max_centres)) break;
    h *= 2.0;
  }
  std::vector<BallSpec> out;
  enumerate(range, h, [&](const Point& centre) {
    if (c == BallConstraint::ContainsOrigin && !(centre.norm() < r)) return;
    out.push_back({centre, r, kind_for(c)});
  });
  return out;
}

Region region_for(const Geometry& geo, const ScalarField& f, const BallSpec& b)
{
  Region reg = Region::from(geo, b);
  if (f.support()) reg.clip(*f.support());
  return reg;
}

MeasureOptions measure_options(const OscillationOptions& opt, double abs_tol = 0.0)
{
  MeasureOptions m;
  m.rel_tol = opt.rel_tol;
  m.abs_tol = abs_tol;
  m.max_intervals = opt.max_intervals;
  return m;
}

double integral_of(const Geometry& geo, const Integrand& g, const ScalarField& f, const BallSpec& b,
                   const OscillationOptions& opt, double abs_tol = 0.0)
{
  return integrate(geo, g, region_for(geo, f, b), f.kinks(), measure_options(opt, abs_tol)).value;
}

double abs_integral(const Geometry& geo, const ScalarField& f, const BallSpec& b, const OscillationOptions& opt)
{
  if (f.is_constant()) return std::abs(*f.constant_value()) * ball_omega(geo, b, opt);
  return integral_of(geo, [&f](const Point& x) { return std::abs(f(x)); }, f, b, opt);
}

std::vector<BallSpec> variant_balls(const BallFamily& family, BmoVariant v)
{
  std::vector<BallSpec> out;
  for (auto b : family.balls) {
    if (v == BmoVariant::Central && !(b.center.norm() < b.radius)) continue;
    b.kind = v == BmoVariant::DunklMetric ? BallSpec::Kind::Orbit : BallSpec::Kind::Euclidean;
    out.push_back(std::move(b));
  }
  return out;
}

/// Same field without the support clip, for integrands that do not vanish
/// off the support (deviations, level sets).
ScalarField unclipped(const ScalarField& b)
{
  ScalarField g([b](const Point& x) { return b(x); });
  g.with_kinks(b.kinks());
  return g;
}

}  // namespace

BallFamily BallFamily::dyadic(const Box& domain, int k_min, int k_max, BallConstraint c, std::size_t max_centres)
{
  BallFamily fam;
  fam.constraint = c;
  for (int k = k_min; k <= k_max; ++k) {
    auto lv = level(domain, std::ldexp(1.0, k), c, max_centres);
    fam.balls.insert(fam.balls.end(), lv.begin(), lv.end());
  }
  return fam;
}

BallFamily BallFamily::around(const Geometry& geo, const Point& x, int k_min, int k_max, BallConstraint c)
{
  BallFamily fam;
  fam.constraint = c;
  for (int k = k_min; k <= k_max; ++k) {
    const double r = std::ldexp(1.0, k), h = 0.5 * r;
    Lattice range;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      range.emplace_back(static_cast<long>(std::ceil((x(i) - r) / h)), static_cast<long>(std::floor((x(i) + r) / h)));
    enumerate(range, h, [&](const Point& centre) {
      BallSpec b{centre, r, kind_for(c)};
      if (c == BallConstraint::ContainsOrigin && !(centre.norm() < r)) return;
      if (ball_contains(geo, b, x)) fam.balls.push_back(std::move(b));
    });
  }
  return fam;
}

BallFamily BallFamily::containing(const Geometry& geo, const Point& x) const
{
  BallFamily out;
  out.constraint = constraint;
  for (const auto& b : balls)
    if (ball_contains(geo, b, x)) out.balls.push_back(b);
  return out;
}

bool ball_contains(const Geometry& geo, const BallSpec& b, const Point& x)
{
  if (b.kind == BallSpec::Kind::Orbit) return geo.metric(x, b.center) < b.radius;
  return (x - b.center).norm() < b.radius;
}

double ball_omega(const Geometry& geo, const BallSpec& b, const OscillationOptions& opt)
{
  if (b.kind == BallSpec::Kind::Euclidean) return ball_measure(geo, b.center, b.radius);
  if (geo.dim() == 1 && geo.is_sign_group()) {
    const double k = geo.axis_multiplicities()[0], c = std::abs(b.center(0)), r = b.radius;
    if (c >= r) return 2.0 * interval_measure_rank_one(k, c - r, c + r);
    return interval_measure_rank_one(k, -(c + r), c + r);
  }
  return orbit_ball_volume(geo, b.center, b.radius, measure_options(opt));
}

double ball_integral(const Geometry& geo, const ScalarField& f, const BallSpec& b, const OscillationOptions& opt)
{
  if (f.is_constant()) return *f.constant_value() * ball_omega(geo, b, opt);
  return integral_of(geo, [&f](const Point& x) { return f(x); }, f, b, opt);
}

double ball_mean(const Geometry& geo, const ScalarField& f, const BallSpec& b, const OscillationOptions& opt)
{
  if (f.is_constant()) return *f.constant_value();
  return ball_integral(geo, f, b, opt) / ball_omega(geo, b, opt);
}

namespace {

double weighted_maximal(const Geometry& geo, const ScalarField& f, const Point& x, double beta,
                        const BallFamily& family, const OscillationOptions& opt)
{
  const double N = geo.homogeneous_dim();
  const auto sub = family.containing(geo, x);
  if (sub.empty()) throw EmptyFamily("no ball of the family contains the point");
  double best = 0.0;
  for (const auto& b : sub.balls) {
    const double w = ball_omega(geo, b, opt);
    if (w < opt.min_measure) continue;
    best = std::max(best, std::pow(w, beta / N - 1.0) * abs_integral(geo, f, b, opt));
  }
  return best;
}

}  // namespace

double hl_maximal(const Geometry& geo, const ScalarField& f, const Point& x, const BallFamily& family,
                  const OscillationOptions& opt)
{
  return weighted_maximal(geo, f, x, 0.0, family, opt);
}

double fractional_maximal(const Geometry& geo, const ScalarField& f, const Point& x, double beta,
                          const BallFamily& family, const OscillationOptions& opt)
{
  const double N = geo.homogeneous_dim();
  if (!(beta > 0.0 && beta < N))
    throw BetaOutOfRange("beta = " + std::to_string(beta) + " must lie in (0, " + std::to_string(N) + ")");
  return weighted_maximal(geo, f, x, beta, family, opt);
}

namespace {

/// Level-set measures omega{b > m}, omega{b < m} over a ball in rank one.
/// Roots of b - m are bracketed on a uniform grid between breakpoints and
/// refined by bisection; the pieces are measured in closed form.
class LevelSets {
 public:
  LevelSets(const Geometry& geo, const ScalarField& b, const BallSpec& ball) : b_(b)
  {
    if (geo.dim() != 1 || !geo.is_sign_group()) throw UnsupportedGroup("level-set measures are rank one only");
    k_ = geo.axis_multiplicities()[0];
    const double c = ball.center(0), r = ball.radius;
    std::vector<Interval> parts{{c - r, c + r}};
    if (ball.kind == BallSpec::Kind::Orbit && std::abs(c) > 0.0) {
      parts.emplace_back(-c - r, -c + r);
      std::sort(parts.begin(), parts.end());
      if (parts[1].first <= parts[0].second) parts = {{parts[0].first, std::max(parts[0].second, parts[1].second)}};
    }
    for (const auto& [lo, hi] : parts) {
      std::vector<double> cuts{lo, hi};
      if (lo < 0.0 && 0.0 < hi) cuts.push_back(0.0);
      for (const auto& h : b.kinks()) {
        const double t = h.offset / h.normal(0);
        if (lo < t && t < hi) cuts.push_back(t);
      }
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], e = cuts[i + 1];
        if (!(e > a)) continue;
        for (int j = 0; j <= kGrid; ++j) {
          const double x = j == kGrid ? e : a + (e - a) * j / kGrid;
          grid_.push_back(x);
        }
        piece_end_.push_back(grid_.size());
      }
    }
  }

  double above(double m) const { return measure(m, 1); }
  double below(double m) const { return measure(m, -1); }

  template <typename Visit>
  void segments(double m, Visit&& visit) const
  {
    scan(m, [&](double lo, double hi, int s, int) { visit(lo, hi, s); });
  }

  /// The ball as sorted pieces.
  std::vector<Interval> pieces() const
  {
    std::vector<Interval> out;
    std::size_t start = 0;
    for (std::size_t end : piece_end_) {
      out.emplace_back(grid_[start], grid_[end - 1]);
      start = end;
    }
    return out;
  }

  /// Points where b - m changes sign.
  std::vector<double> crossings(double m) const
  {
    std::vector<double> out;
    scan(m, [&](double, double root, int, int) { out.push_back(root); });
    return out;
  }

 private:
  static constexpr int kGrid = 512;

  int sign_at(double x, double m) const
  {
    const double v = b_(make_point1(x)) - m;
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  }

  /// Calls visit(segment_start, root, sign_before, sign_after) at every
  /// sign change and visit(segment_start, piece_end, sign, 2) at piece ends.
  template <typename Visit>
  void scan(double m, Visit&& visit) const
  {
    std::size_t start = 0;
    for (std::size_t end : piece_end_) {
      // Evaluate strictly inside the piece; endpoint values may belong to a
      // neighbouring branch of a jump.
      double seg_lo = grid_[start];
      const double piece_hi = grid_[end - 1];
      auto inner = [&](std::size_t j) {
        const double x = grid_[j];
        if (j == start) return x + 1e-12 * (grid_[j + 1] - x);
        if (j == end - 1) return x - 1e-12 * (x - grid_[j - 1]);
        return x;
      };
      int s_prev = sign_at(inner(start), m);
      for (std::size_t j = start + 1; j < end; ++j) {
        const double xj = inner(j);
        const int s = sign_at(xj, m);
        if (s != s_prev) {
          double lo = inner(j - 1), hi = xj;
          for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (sign_at(mid, m) == s_prev ? lo : hi) = mid;
          }
          visit(seg_lo, hi, s_prev, s);
          seg_lo = hi;
          s_prev = s;
        }
      }
      visit(seg_lo, piece_hi, s_prev, 2);
      start = end;
    }
  }

  double measure(double m, int want) const
  {
    double acc = 0.0;
    scan(m, [&](double lo, double hi, int s, int) {
      if (s == want) acc += interval_measure_rank_one(k_, lo, hi);
    });
    return acc;
  }

  const ScalarField& b_;
  double k_ = 0.0;
  std::vector<double> grid_;
  std::vector<std::size_t> piece_end_;
};

}  // namespace

OscillationStats oscillation_stats(const Geometry& geo, const ScalarField& b, const BallSpec& ball, double p,
                                   const OscillationOptions& opt)
{
  OscillationStats s;
  s.measure = ball_omega(geo, ball, opt);
  if (b.is_constant()) {
    s.mean = *b.constant_value();
    return s;
  }
  s.mean = ball_integral(geo, b, ball, opt) / s.measure;
  const double scale = abs_integral(geo, b, ball, opt);
  const double m = s.mean;
  const double tol = 1e-12 * scale;
  ScalarField g = unclipped(b);
  if (geo.dim() == 1 && geo.is_sign_group())
    for (double t : LevelSets(geo, b, ball).crossings(m)) g.with_kink({make_point1(1.0), t});
  s.mean_abs_dev = integral_of(geo, [&](const Point& x) { return std::abs(b(x) - m); }, g, ball, opt, tol) / s.measure;
  if (p == 1.0) {
    s.p_mean_dev = s.mean_abs_dev;
  } else {
    const double tol_p = 1e-12 * std::pow(scale / s.measure, p) * s.measure;
    const double ip =
        integral_of(geo, [&](const Point& x) { return std::pow(std::abs(b(x) - m), p); }, g, ball, opt, tol_p);
    s.p_mean_dev = std::pow(ip / s.measure, 1.0 / p);
  }
  return s;
}

double oscillation(const Geometry& geo, const ScalarField& b, const BallSpec& ball, const OscillationOptions& opt)
{
  return oscillation_stats(geo, b, ball, 1.0, opt).mean_abs_dev;
}

double sharp_maximal(const Geometry& geo, const ScalarField& f, const Point& x, const BallFamily& family,
                     const OscillationOptions& opt)
{
  const auto sub = family.containing(geo, x);
  if (sub.empty()) throw EmptyFamily("no ball of the family contains the point");
  double best = 0.0;
  for (const auto& b : sub.balls) {
    if (ball_omega(geo, b, opt) < opt.min_measure) continue;
    best = std::max(best, oscillation(geo, f, b, opt));
  }
  return best;
}

BmoResult bmo_scan(const Geometry& geo, const ScalarField& b, BmoVariant variant, const BallFamily& family, double p,
                   const OscillationOptions& opt)
{
  BmoResult res;
  bool any = false;
  for (const auto& ball : variant_balls(family, variant)) {
    if (ball_omega(geo, ball, opt) < opt.min_measure) {
      ++res.skipped;
      continue;
    }
    ++res.ball_count;
    const double v = oscillation_stats(geo, b, ball, p, opt).p_mean_dev;
    if (!any || v > res.sup) {
      res.sup = v;
      res.argsup = ball;
      any = true;
    }
  }
  if (!any) throw EmptyFamily(std::string("no admissible ball for the ") + to_string(variant) + " variant");
  return res;
}

double bmo_norm(const Geometry& geo, const ScalarField& b, BmoVariant variant, const BallFamily& family,
                const OscillationOptions& opt)
{
  return bmo_scan(geo, b, variant, family, 1.0, opt).sup;
}

PMeanEquivalence bmo_pmean_equivalence(const Geometry& geo, const ScalarField& b, double p, BmoVariant variant,
                                       const BallFamily& family, const OscillationOptions& opt)
{
  if (!(p >= 1.0)) throw std::invalid_argument("p-mean oscillation needs p >= 1");
  PMeanEquivalence out;
  out.sup_one = bmo_scan(geo, b, variant, family, 1.0, opt).sup;
  out.sup_p = bmo_scan(geo, b, variant, family, p, opt).sup;
  if (out.sup_one == 0.0 && out.sup_p == 0.0)
    out.ratio = 1.0;
  else
    out.ratio = out.sup_p / out.sup_one;
  return out;
}

double median(const Geometry& geo, const ScalarField& b, const BallSpec& ball, const OscillationOptions& opt)
{
  if (b.is_constant()) return *b.constant_value();
  const double omega = ball_omega(geo, ball, opt);
  if (omega < opt.min_measure) throw std::invalid_argument("median over a degenerate ball");
  const LevelSets L(geo, b, ball);

  const int n = 129;
  const Lattice range{{-(n / 2), n / 2}};
  const double h = ball.radius / (n / 2 + 1);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  auto probe = [&](const Point& p) {
    const double v = b(p);
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  enumerate(range, h, [&](const Point& u) {
    probe(ball.center + u);
    if (ball.kind == BallSpec::Kind::Orbit) probe(-(ball.center + u));
  });
  if (!std::isfinite(lo)) throw std::invalid_argument("field has no finite values on the ball");

  const double half = 0.5 * omega * (1.0 + 1e-12);
  double span = std::max(hi - lo, 1e-12 * std::max(1.0, std::abs(hi)));
  while (L.above(hi) > half) {
    hi += span;
    span *= 2.0;
  }
  span = std::max(hi - lo, 1e-12 * std::max(1.0, std::abs(lo)));
  while (L.above(lo) <= half) {
    lo -= span;
    span *= 2.0;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (L.above(mid) <= half)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<Interval> level_intervals(const Geometry& geo, const ScalarField& b, const BallSpec& ball, double m,
                                      LevelSide side)
{
  std::vector<Interval> out;
  auto keep = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    if (!out.empty() && out.back().second >= lo)
      out.back().second = std::max(out.back().second, hi);
    else
      out.emplace_back(lo, hi);
  };
  if (b.is_constant()) {
    const double c = *b.constant_value();
    if ((side == LevelSide::Below) != (c >= m))
      for (const auto& [lo, hi] : LevelSets(geo, fields::zero(1), ball).pieces()) keep(lo, hi);
    return out;
  }
  LevelSets(geo, b, ball).segments(m, [&](double lo, double hi, int s) {
    if ((s < 0) == (side == LevelSide::Below)) keep(lo, hi);
  });
  return out;
}

MedianSplit median_split(const Geometry& geo, const ScalarField& b, const BallSpec& ball, double m,
                         const OscillationOptions& opt)
{
  const double omega = ball_omega(geo, ball, opt);
  if (b.is_constant()) {
    const double c = *b.constant_value();
    return {c > m ? 1.0 : 0.0, c < m ? 1.0 : 0.0};
  }
  const LevelSets L(geo, b, ball);
  return {L.above(m) / omega, L.below(m) / omega};
}

VmoReport vmo_diagnostics(const Geometry& geo, const ScalarField& b, BmoVariant variant, const VmoSweep& sweep,
                          const OscillationOptions& opt)
{
  if (sweep.domain.lo.size() != geo.dim()) throw std::invalid_argument("sweep domain dimension differs");
  const std::vector<std::string> cols{"parameter", "sup_oscillation", "ball_count"};
  VmoReport rep{{"vmo_small_r", cols, {}}, {"vmo_large_r", cols, {}}, {"vmo_far", cols, {}}};
  auto sweep_row = [&](Table& t, double param, const std::vector<BallSpec>& balls) {
    BallFamily fam;
    fam.balls = balls;
    double sup = 0.0;
    std::size_t count = 0;
    try {
      const auto r = bmo_scan(geo, b, variant, fam, 1.0, opt);
      sup = r.sup;
      count = r.ball_count;
    } catch (const EmptyFamily&) {
    }
    t.add({param, sup, static_cast<double>(count)});
  };
  const BallConstraint c = variant == BmoVariant::Central ? BallConstraint::ContainsOrigin : BallConstraint::All;
  for (double r : sweep.small_radii) sweep_row(rep.small_r, r, level(sweep.domain, r, c, sweep.max_centres));
  for (double r : sweep.large_radii) sweep_row(rep.large_r, r, level(sweep.domain, r, c, sweep.max_centres));
  // Far balls cannot contain the origin; the central variant reads them as
  // Euclidean balls.
  const BmoVariant far_variant = variant == BmoVariant::Central ? BmoVariant::Dunkl : variant;
  for (double D : sweep.far_distances) {
    BallFamily fam;
    for (int i = 0; i < geo.dim(); ++i)
      for (double s : {1.0, -1.0}) {
        Point c0 = Point::Zero(geo.dim());
        c0(i) = s * D;
        fam.balls.push_back({c0, sweep.far_radius, BallSpec::Kind::Euclidean});
      }
    double sup = 0.0;
    std::size_t count = 0;
    try {
      const auto r = bmo_scan(geo, b, far_variant, fam, 1.0, opt);
      sup = r.sup;
      count = r.ball_count;
    } catch (const EmptyFamily&) {
    }
    rep.far.add({D, sup, static_cast<double>(count)});
  }
  return rep;
}

}  // namespace dunkl
