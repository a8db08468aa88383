#ifndef DUNKL_QUADRATURE_HPP
#define DUNKL_QUADRATURE_HPP

#include "dunkl/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace dunkl {

/// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Jacobi rule for the weight (1 - s)^a (1 + s)^b on [-1, 1], a, b > -1,
/// computed by Golub-Welsch. Rules are cached; the returned reference stays
/// valid for the lifetime of the program.
const GaussRule& gauss_jacobi(int n, double a, double b);

inline const GaussRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// Fixed rule on [lo, hi] with a Jacobi weight attached to the endpoints:
/// returns the integral of g(s) (hi - s)^a (s - lo)^b ds. Note the endpoint
/// order: `a` belongs to `hi`, `b` to `lo`, matching (1 - s)^a (1 + s)^b.
template <typename F>
double jacobi_panel(F&& g, double lo, double hi, double a, double b, int n)
{
  const GaussRule& rule = gauss_jacobi(n, a, b);
  const double half = 0.5 * (hi - lo);
  const double scale = std::pow(half, 1.0 + a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * g(lo + half * (rule.nodes[i] + 1.0));
  return acc * scale;
}

template <typename F>
double legendre_panel(F&& f, double lo, double hi, int n)
{
  return jacobi_panel(std::forward<F>(f), lo, hi, 0.0, 0.0, n);
}

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& o)
  {
    value += o.value;
    error += o.error;
    evaluations += o.evaluations;
    converged = converged && o.converged;
    return *this;
  }
};

struct AdaptiveOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
  bool throw_on_failure = true;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error, mass;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(F& f, double a, double b)
{
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  resasc *= std::abs(h);
  resabs *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk * h, err, resabs};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) over the pieces delimited by
/// `breaks` (sorted, at least two entries). The worst segment is bisected
/// until the summed error estimate meets max(abs_tol, rel_tol |value|).
/// Segments are summed in positional order, so results are reproducible.
template <typename F>
QuadResult integrate_adaptive(F&& f, std::span<const double> breaks, const AdaptiveOptions& opt = {})
{
  std::priority_queue<detail::Segment> heap;
  std::vector<detail::Segment> done;
  QuadResult out;
  double total = 0.0, total_err = 0.0, mass = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  // Round-off floor: an integral that cancels to ~0 cannot be resolved
  // relative to its value, only relative to the integral of |f|.
  auto target = [&](double value, double m) { return std::max({opt.abs_tol, opt.rel_tol * std::abs(value), 100.0 * eps * m}); };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto s = detail::gk15(f, breaks[i], breaks[i + 1]);
    out.evaluations += 15;
    total += s.value;
    total_err += s.error;
    mass += s.mass;
    heap.push(s);
  }
  int intervals = static_cast<int>(heap.size());
  while (!heap.empty() && total_err > target(total, mass)) {
    if (intervals >= opt.max_intervals) break;
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-14 * std::max(1.0, std::abs(mid))) {
      // Cannot split further; park it.
      done.push_back(worst);
      continue;
    }
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    mass += left.mass + right.mass - worst.mass;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  out.value = 0.0;
  out.error = 0.0;
  for (const auto& s : done) {
    out.value += s.value;
    out.error += s.error;
  }
  out.converged = out.error <= target(out.value, mass) * 1.0000001;
  if (!out.converged && opt.throw_on_failure)
    throw NoConvergence("adaptive quadrature budget exhausted (estimate " + std::to_string(out.value) + ", error " +
                        std::to_string(out.error) + ")");
  return out;
}

template <typename F>
QuadResult integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {})
{
  const std::array<double, 2> br{a, b};
  return integrate_adaptive(std::forward<F>(f), std::span<const double>(br), opt);
}

/// Sorted, deduplicated breakpoints restricted to [lo, hi], endpoints included.
std::vector<double> make_breaks(double lo, double hi, std::vector<double> interior);

}  // namespace dunkl

#endif
