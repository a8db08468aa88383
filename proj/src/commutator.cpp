#include "dunkl/commutator.hpp"

#include "dunkl/heat.hpp"
#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace dunkl {

namespace {

bool vanishing(const ScalarField& f) { return f.is_constant() && *f.constant_value() == 0.0; }

void require_rank_one(const Geometry& geo, const char* what)
{
  if (geo.dim() != 1 || !geo.is_sign_group()) throw UnsupportedGroup(std::string(what) + " is implemented in rank one");
}

double support_radius(const ScalarField& f)
{
  if (!f.support()) throw std::invalid_argument("test function needs a declared support");
  return std::max({std::abs(f.support()->lo(0)), std::abs(f.support()->hi(0)), 1e-300});
}

std::vector<double> feature_points(const ScalarField& f, const ScalarField* b, double L)
{
  std::vector<double> pts{0.0};
  auto add = [&](double t) {
    if (std::abs(t) <= L) {
      pts.push_back(t);
      pts.push_back(-t);
    }
  };
  add(f.support()->lo(0));
  add(f.support()->hi(0));
  for (const auto& h : f.kinks()) add(h.offset / h.normal(0));
  if (b) {
    for (const auto& h : b->kinks()) add(h.offset / h.normal(0));
    if (b->support()) {
      add(b->support()->lo(0));
      add(b->support()->hi(0));
    }
  }
  return pts;
}

}  // namespace

RieszApplyResult commutator_apply_at(const RieszKernel& K, const ScalarField& b, const ScalarField& f, const Point& x,
                                     const RieszApplyOptions& opt)
{
  if (b.is_constant() || vanishing(f)) return {};
  const double bx = b(x);
  if (!std::isfinite(bx)) throw std::domain_error("symbol is not finite at the evaluation point");
  ScalarField h([b, f, bx](const Point& y) {
    const double fv = f(y);
    return fv == 0.0 ? 0.0 : (bx - b(y)) * fv;
  });
  if (f.support()) h.with_support(*f.support());
  h.with_kinks(f.kinks());
  h.with_kinks(b.kinks());
  return riesz_apply_at(K, h, x, opt);
}

double commutator_definitional_at(const RieszKernel& K, const ScalarField& b, const ScalarField& f, const Point& x,
                                  const RieszApplyOptions& opt)
{
  if (vanishing(f)) return 0.0;
  const double rf = riesz_apply_at(K, f, x, opt).value;
  const double rbf = riesz_apply_at(K, fields::product(b, f), x, opt).value;
  return b(x) * rf - rbf;
}

ScalarField commutator_apply(const RieszKernel& K, const ScalarField& b, const ScalarField& f,
                             const RieszApplyOptions& opt)
{
  if (b.is_constant() || vanishing(f)) return fields::zero(K.geometry().dim());
  const RieszKernel* kp = &K;
  return ScalarField([kp, b, f, opt](const Point& x) { return commutator_apply_at(*kp, b, f, x, opt).value; });
}

// ---------------------------------------------------------------------------

Profile::Profile(PanelTable table, double k, double alpha, double rel_tol)
    : table_(std::move(table)), k_(k), alpha_(alpha), rel_tol_(rel_tol)
{
}

Profile Profile::zero(double outer)
{
  Profile p(PanelTable([](double) { return 0.0; }, {-outer, outer}, 2), 0.0, 1.0, 1e-8);
  p.zero_ = true;
  return p;
}

double Profile::operator()(double x) const
{
  if (zero_) return 0.0;
  const double L = outer();
  if (std::abs(x) <= L) return table_(x);
  const double N = 1.0 + 2.0 * k_;
  return table_(x > 0 ? L : -L) * std::pow(L / std::abs(x), N - alpha_);
}

double Profile::tail_energy(double q, double R) const
{
  if (zero_) return 0.0;
  const double L = outer(), N = 1.0 + 2.0 * k_;
  const double decay = q * (N - alpha_) - N;
  if (!(decay > 0.0)) throw ExponentViolation("q (N - alpha) must exceed N");
  const double wk = std::pow(2.0, k_);
  auto w = [&](double x) { return std::pow(std::abs(table_(x)), q) * wk * std::pow(std::abs(x), 2.0 * k_); };
  AdaptiveOptions ao;
  ao.rel_tol = rel_tol_;
  ao.max_intervals = 20000;
  double total = 0.0;
  if (R < L) {
    for (double s : {-1.0, 1.0}) {
      const double lo = std::max(R, 0.0), hi = L;
      std::vector<double> br;
      for (double t : table_.breaks())
        if (s * t > lo && s * t < hi) br.push_back(s * t);
      const auto breaks = make_breaks(s > 0 ? lo : -hi, s > 0 ? hi : -lo, br);
      total += integrate_adaptive(w, std::span<const double>(breaks), ao).value;
    }
  }
  const double R0 = std::max(R, L);
  for (double s : {-L, L})
    total += std::pow(std::abs(table_(s)), q) * wk * std::pow(L, q * (N - alpha_)) * std::pow(R0, -decay) / decay;
  return total;
}

double Profile::ball_mean(double x, double r) const
{
  if (zero_) return 0.0;
  const double wk = std::pow(2.0, k_);
  auto w = [&](double y) { return (*this)(y) * wk * std::pow(std::abs(y), 2.0 * k_); };
  const double lo = x - r, hi = x + r, L = outer();
  std::vector<double> br{0.0, -L, L};
  const auto& tb = table_.breaks();
  for (auto it = std::upper_bound(tb.begin(), tb.end(), lo); it != tb.end() && *it < hi; ++it) br.push_back(*it);
  const auto breaks = make_breaks(lo, hi, br);
  AdaptiveOptions ao;
  ao.rel_tol = rel_tol_;
  ao.abs_tol = 1e-300;
  ao.throw_on_failure = false;
  return integrate_adaptive(w, std::span<const double>(breaks), ao).value / ball_volume_rank_one(k_, x, r);
}

double Profile::deviation_energy(double q, double r) const
{
  if (zero_) return 0.0;
  const auto& rule = gauss_legendre(20);
  const double wk = std::pow(2.0, k_);
  const auto& tb = table_.breaks();
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < tb.size(); ++p) {
    const double a = tb[p], b = tb[p + 1], h = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double x = a + h * (rule.nodes[i] + 1.0);
      const double dev = std::abs(table_(x) - ball_mean(x, r));
      total += rule.weights[i] * h * std::pow(dev, q) * wk * std::pow(std::abs(x), 2.0 * k_);
    }
  }
  return total;
}

ScalarField Profile::field() const
{
  const Profile copy = *this;
  ScalarField f([copy](const Point& x) { return copy(x(0)); });
  f.with_kink({make_point1(1.0), 0.0});
  if (zero_) f.mark_constant(0.0);
  return f;
}

namespace {

Profile tabulate(const RieszKernel& K, const ScalarField& f, const ScalarField* b, const ProfileOptions& opt,
                 const std::function<double(double)>& g)
{
  const auto& geo = K.geometry();
  const double M = support_radius(f);
  const double L = opt.reach * M;
  const auto breaks = graded_breaks(feature_points(f, b, L), 2.0 * M, L, opt.levels);
  return Profile(PanelTable(g, breaks, opt.nodes), geo.axis_multiplicities()[0], K.alpha(), opt.rel_tol);
}

}  // namespace

Profile commutator_profile(const RieszKernel& K, const ScalarField& b, const ScalarField& f, const ProfileOptions& opt)
{
  require_rank_one(K.geometry(), "commutator profile");
  const double M = support_radius(f);
  if (b.is_constant() || vanishing(f)) return Profile::zero(opt.reach * M);
  return tabulate(K, f, &b, opt,
                  [&](double x) { return commutator_apply_at(K, b, f, make_point1(x), opt.apply).value; });
}

Profile riesz_profile(const RieszKernel& K, const ScalarField& f, const ProfileOptions& opt)
{
  require_rank_one(K.geometry(), "Riesz profile");
  const double M = support_radius(f);
  if (vanishing(f)) return Profile::zero(opt.reach * M);
  return tabulate(K, f, nullptr, opt, [&](double x) { return riesz_apply_at(K, f, make_point1(x), opt.apply).value; });
}

NormEstimate commutator_norm_estimate(const RieszKernel& K, const ScalarField& b, const std::vector<ScalarField>& family,
                                      const Exponents& e, const ProfileOptions& opt)
{
  check_exponents(K, e);
  NormEstimate out;
  for (const auto& f : family) {
    const double nf = vanishing(f) ? 0.0 : lp_norm(K.geometry(), f, e.pv());
    if (!(nf > 0.0)) {
      ++out.skipped;
      continue;
    }
    const double r = b.is_constant() ? 0.0 : commutator_profile(K, b, f, opt).lq_norm(e.qv()) / nf;
    out.ratios.push_back(r);
    out.estimate = std::max(out.estimate, r);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

ScalarField abs_power(const ScalarField& f, double s)
{
  ScalarField g([f, s](const Point& x) { return std::pow(std::abs(f(x)), s); });
  if (f.support()) g.with_support(*f.support());
  g.with_kinks(f.kinks());
  return g;
}

}  // namespace

VerificationReport upper_bound_experiment(const RieszKernel& K, const ScalarField& b, const ScalarField& f,
                                          const Exponents& e, const std::vector<Point>& samples,
                                          const UpperBoundOptions& opt)
{
  check_exponents(K, e);
  const double p = e.pv();
  const double s = opt.s.value_or(0.5 * (1.0 + p));
  if (!(s > 1.0 && s < p))
    throw ExponentViolation("s = " + std::to_string(s) + " must lie in (1, p = " + std::to_string(p) + ")");
  const auto& geo = K.geometry();
  require_rank_one(geo, "upper bound experiment");

  VerificationReport rep{"commutator-upper", "sharp maximal function", {}, {}, {}};
  rep.metrics["s"] = s;
  if (b.is_constant()) {
    rep.metrics["sup_ratio"] = 0.0;
    rep.require("constant symbol gives zero", true, 0.0);
    return rep;
  }
  try {
    const double bmo =
        bmo_norm(geo, b, BmoVariant::DunklMetric, BallFamily::dyadic(opt.bmo_domain, opt.bmo_k_min, opt.bmo_k_max));
    rep.metrics["bmo_d"] = bmo;
    const ScalarField fs = abs_power(f, s);
    const double beta = K.alpha() * s;

    auto run = [&](int nodes) {
      ProfileOptions po = opt.profile;
      po.nodes = nodes;
      const ScalarField g = commutator_profile(K, b, f, po).field();
      const ScalarField rfs = abs_power(riesz_profile(K, f, po).field(), s);
      std::vector<double> ratios;
      std::vector<std::vector<double>> where;
      for (const auto& x : samples) {
        const auto fam = BallFamily::around(geo, x, opt.k_min, opt.k_max);
        const double lhs = sharp_maximal(geo, g, x, fam);
        const double rhs = bmo * (std::pow(hl_maximal(geo, rfs, x, fam), 1.0 / s) +
                                  std::pow(fractional_maximal(geo, fs, x, beta, fam), 1.0 / s));
        ratios.push_back(rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0));
        where.push_back({x(0)});
      }
      return RatioStats::from(ratios, where);
    };
    const auto base = run(opt.profile.nodes);
    const auto fine = run(opt.refined_nodes);
    rep.stats["ratio"] = base;
    rep.stats["ratio_refined"] = fine;
    rep.metrics["sup_ratio"] = base.sup;
    rep.require("ratio finite", std::isfinite(base.sup) && std::isfinite(fine.sup), base.sup);
    const double drift = base.sup > 0.0 ? std::abs(fine.sup - base.sup) / base.sup : 0.0;
    rep.metrics["refinement_drift"] = drift;
    rep.require_at_most("stable under refinement", drift, 0.1);
  } catch (const std::exception& ex) {
    rep.error("sharp maximal inequality", ex);
  }
  return rep;
}

// ---------------------------------------------------------------------------

ScalarField mollified_indicator(const std::vector<Interval>& intervals, double w)
{
  if (intervals.empty()) return fields::zero(1);
  ScalarField f([intervals, w](const Point& x) {
    double acc = 0.0;
    for (const auto& [a, b] : intervals) {
      if (x(0) <= a - w || x(0) >= b + w) continue;
      acc += fields::smoothstep((x(0) - a) / w) * fields::smoothstep((b - x(0)) / w);
    }
    return acc;
  });
  f.with_support({make_point1(intervals.front().first - w), make_point1(intervals.back().second + w)});
  for (const auto& [a, b] : intervals)
    for (double t : {a - w, a, a + w, b - w, b, b + w}) f.with_kink({make_point1(1.0), t});
  return f;
}

namespace {

bool inside(const std::vector<Interval>& set, double y)
{
  return std::any_of(set.begin(), set.end(), [y](const Interval& I) { return y > I.first && y < I.second; });
}

/// ||f - 1_E||_p against omega, over the transition layers of width 2w.
double mollification_error(const Geometry& geo, const ScalarField& f, const std::vector<Interval>& set, double w,
                           double p)
{
  const double k = geo.axis_multiplicities()[0];
  auto g = [&](double y) {
    const double d = f(make_point1(y)) - (inside(set, y) ? 1.0 : 0.0);
    return std::pow(std::abs(d), p) * std::pow(2.0, k) * std::pow(std::abs(y), 2.0 * k);
  };
  AdaptiveOptions ao;
  ao.rel_tol = 1e-8;
  ao.abs_tol = 1e-300;
  ao.throw_on_failure = false;
  double acc = 0.0;
  for (const auto& [a, b] : set)
    for (double t : {a, b}) {
      const auto br = make_breaks(t - w, t + w, {t, 0.0});
      acc += integrate_adaptive(g, std::span<const double>(br), ao).value;
    }
  return std::pow(acc, 1.0 / p);
}

double measure_of(double k, const std::vector<Interval>& set)
{
  double m = 0.0;
  for (const auto& [a, b] : set) m += interval_measure_rank_one(k, a, b);
  return m;
}

std::vector<double> grid(double c, double r, int n)
{
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(c - r + (2.0 * i + 1.0) * r / n);
  return out;
}

}  // namespace

VerificationReport lower_bound_experiment(const RieszKernel& K, const ScalarField& b, const Exponents& e,
                                          const BallSpec& B0, const LowerBoundOptions& opt)
{
  check_exponents(K, e);
  const auto& geo = K.geometry();
  require_rank_one(geo, "lower bound experiment");
  if (!(std::abs(B0.center(0)) < B0.radius)) throw std::invalid_argument("B0 must contain the origin");

  VerificationReport rep{"commutator-lower", "lower bound via median split", {}, {}, {}};
  const double k = geo.axis_multiplicities()[0], N = geo.homogeneous_dim();
  const double r = B0.radius, alpha = K.alpha(), p = e.pv(), q = e.qv();
  const BallSpec Bt{make_point1(B0.center(0) + 5.0 * r), r};
  const double omega0 = ball_omega(geo, B0);

  const double vol_ratio = omega0 / (std::pow(r, N) * ball_omega(geo, {make_point1(0.0), 1.0}));
  rep.metrics["volume_ratio"] = vol_ratio;
  rep.require_at_most("origin ball volume", vol_ratio, std::pow(2.0, N), "omega(B0) <= (2r)^N omega(B(0,1))");

  if (b.is_constant()) {
    for (const char* m : {"omega_osc", "chain_sum", "chain_factor", "C"}) rep.metrics[m] = 0.0;
    rep.require("constant symbol gives zero", true, 0.0);
    return rep;
  }

  const double m = median(geo, b, Bt);
  const auto split = median_split(geo, b, Bt, m);
  const double below = split.below, at_least = 1.0 - split.below;
  rep.metrics["median"] = m;
  rep.metrics["split_below"] = below;
  if (below < 0.25 || at_least < 0.25)
    throw DegenerateSplit("median split leaves a side with measure " + std::to_string(std::min(below, at_least)) +
                          " of the ball");
  rep.inform("split imbalance", std::abs(below - 0.5));

  const std::vector<std::vector<Interval>> E{level_intervals(geo, b, Bt, m, LevelSide::Below),
                                             level_intervals(geo, b, Bt, m, LevelSide::AtLeast)};
  const double w = r / opt.mollify_ratio;

  try {
    const double Omega = oscillation(geo, b, B0);
    rep.metrics["omega_osc"] = Omega;
    double sum = 0.0, moll = 0.0;
    for (std::size_t i = 0; i < E.size(); ++i) {
      const ScalarField fi = mollified_indicator(E[i], w);
      const double nf = lp_norm(geo, fi, p);
      const double ng = commutator_profile(K, b, fi, opt.profile).lq_norm(q);
      rep.metrics["norm_f" + std::to_string(i + 1)] = nf;
      rep.metrics["norm_commutator_f" + std::to_string(i + 1)] = ng;
      sum += ng / nf;
      moll = std::max(moll, mollification_error(geo, fi, E[i], w, p) / std::pow(measure_of(k, E[i]), 1.0 / p));
    }
    rep.metrics["mollification_error"] = moll;
    rep.inform("mollification error", moll, "relative L^p distance to the hard indicators");
    const double factor = std::pow(r, -alpha) * std::pow(omega0, 1.0 / p - 1.0 / q) * sum;
    const double C = Omega / factor;
    rep.metrics["chain_sum"] = sum;
    rep.metrics["chain_factor"] = factor;
    rep.metrics["C"] = C;
    rep.require("chain constant finite", std::isfinite(C) && factor > 0.0, C);
  } catch (const std::exception& ex) {
    rep.error("lower bound chain", ex);
  }

  // b(x) - b(y) keeps one sign on B_i x E_i; R(x, y) keeps one sign on B0 x B~0.
  const auto xs = grid(B0.center(0), r, opt.sign_samples);
  const auto ys = grid(Bt.center(0), r, opt.sign_samples);
  int bad = 0, pos = 0, neg = 0;
  for (double x : xs) {
    const double bx = b(make_point1(x));
    for (double y : ys) {
      const double by = b(make_point1(y));
      if (bx >= m && inside(E[0], y) && !(bx - by > 0.0)) ++bad;
      if (bx <= m && inside(E[1], y) && !(bx - by <= 0.0)) ++bad;
      const double R = K(make_point1(x), make_point1(y));
      (R > 0.0 ? pos : neg) += 1;
    }
  }
  rep.require("symbol difference sign coherence", bad == 0, bad);
  rep.require("kernel sign coherence", pos == 0 || neg == 0, pos - neg);
  return rep;
}

// ---------------------------------------------------------------------------

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nan("");
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

ProbeReport compactness_probe(const RieszKernel& K, const ScalarField& b, const std::vector<ScalarField>& family,
                              const Exponents& e, const ProbeOptions& opt)
{
  check_exponents(K, e);
  require_rank_one(K.geometry(), "compactness probe");
  const double q = e.qv(), N = K.geometry().homogeneous_dim();
  const double target = -N / e.p_conjugate();
  ProbeReport out{{"compactness_tail", {"member", "R", "tail_energy", "tail_norm"}, {}},
                  {"compactness_small_ball", {"member", "r", "deviation_energy", "deviation_norm"}, {}},
                  {"commutator-compactness", "relative compactness", {}, {}, {}}};
  auto& rep = out.report;
  rep.metrics["target_exponent"] = target;

  double worst_exponent = 0.0, plateau = 0.0;
  bool monotone = true, fitted = false;
  std::vector<double> slopes;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& f = family[i];
    const double idx = static_cast<double>(i);
    try {
      const double M = vanishing(f) ? 1.0 : support_radius(f);
      const Profile g = vanishing(f) ? Profile::zero(opt.profile.reach) : commutator_profile(K, b, f, opt.profile);
      std::vector<double> Rs, norms;
      for (double t : opt.tail_radii) {
        const double E = g.tail_energy(q, t * M);
        out.tail.add({idx, t * M, E, std::pow(E, 1.0 / q)});
        Rs.push_back(t * M);
        norms.push_back(std::pow(E, 1.0 / q));
      }
      std::vector<double> dev;
      for (double t : opt.small_radii) {
        const double D = g.deviation_energy(q, t * M);
        out.small_ball.add({idx, t * M, D, std::pow(D, 1.0 / q)});
        dev.push_back(std::pow(D, 1.0 / q));
      }
      if (g.vanishes()) continue;
      const double slope = loglog_slope(Rs, norms);
      slopes.push_back(slope);
      fitted = true;
      worst_exponent = std::max(worst_exponent, std::abs(slope - target) / std::abs(target));
      for (std::size_t j = 1; j < dev.size(); ++j)
        if (dev[j] > (1.0 + opt.monotone_slack) * dev[j - 1]) monotone = false;
      if (!dev.empty() && dev.front() > 0.0) plateau = std::max(plateau, dev.back() / dev.front());
    } catch (const std::exception& ex) {
      rep.error("member " + std::to_string(i), ex);
    }
  }
  if (!fitted) {
    rep.require("curves vanish", true, 0.0, "constant symbol or zero family");
    return out;
  }
  double mean = 0.0;
  for (double s : slopes) mean += s / static_cast<double>(slopes.size());
  rep.metrics["fitted_exponent"] = mean;
  rep.metrics["exponent_deviation"] = worst_exponent;
  rep.metrics["small_ball_ratio"] = plateau;
  if (opt.expect_decay) {
    rep.require_at_most("tail exponent", worst_exponent, opt.exponent_tolerance);
    rep.require("small-ball curve decreasing", monotone, plateau);
  } else {
    rep.inform("tail exponent deviation", worst_exponent);
    rep.inform("small-ball last/first", plateau);
  }
  return out;
}

}  // namespace dunkl
