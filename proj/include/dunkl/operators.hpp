#ifndef DUNKL_OPERATORS_HPP
#define DUNKL_OPERATORS_HPP

#include "dunkl/field.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/quadrature.hpp"

#include <cmath>
#include <vector>

namespace dunkl {

struct OperatorOptions {
  /// Below this |<a, x>| the difference quotient is replaced by its limit.
  double switch_distance = 1e-6;
};

/// T_xi f(x).
double dunkl_derivative(const Geometry& geo, const Point& xi, const ScalarField& f, const Point& x,
                        const OperatorOptions& opt = {});

/// T_j f(x) for the coordinate direction e_j.
double dunkl_partial(const Geometry& geo, int j, const ScalarField& f, const Point& x, const OperatorOptions& opt = {});

/// T_xi f as a new field (used for composition checks).
ScalarField dunkl_derivative_field(const Geometry& geo, const Point& xi, const ScalarField& f,
                                   const OperatorOptions& opt = {});

/// Euclidean Laplacian plus 2 sum_{R+} k(a) delta_a f.
double dunkl_laplacian(const Geometry& geo, const ScalarField& f, const Point& x, const OperatorOptions& opt = {});

struct KernelOptions {
  double guard = 50.0;
  double rel_stop = 1e-14;
  int max_terms = 200;
};

/// Rank-one kernel E_k(x, y) by its power series in xy. For xy < 0 the same
/// function is summed through the positive-term form e^{xy} 1F1(k; 2k+1; -2xy).
double dunkl_kernel_1d(double k, double x, double y, const KernelOptions& opt = {});

/// Plain power series, both signs (cancels badly for large negative xy).
double dunkl_kernel_series(double k, double z, const KernelOptions& opt = {});

/// e^{-|z|} E_k(z), bounded by 1; valid beyond the series guard through the
/// Rosler integral.
double dunkl_kernel_scaled_1d(double k, double z);

/// Product kernel for sign-change groups.
double dunkl_kernel(const Geometry& geo, const Point& x, const Point& y, const KernelOptions& opt = {});

/// Normalized Bessel function Gamma(nu+1) (2/z)^nu J_nu(z), nu > -1.
double normalized_bessel(double nu, double z);

/// Real and imaginary parts of E_k(i z) (rank one).
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
};
ComplexValue dunkl_kernel_imaginary(double k, double z);

/// Rank-one Rosler measure: E_k(x, y) = int e^{eta y} dmu_x(eta), written in
/// the variable s = eta / x in [-1, 1] with density
/// w_k(s) = c_k (1 - s)^{k-1} (1 + s)^k, c_k = Gamma(k+1/2) / (sqrt(pi) Gamma(k)).
/// For k = 0 the measure is the point mass at eta = x.
class RoslerMeasure1D {
 public:
  RoslerMeasure1D(double k, double x);

  double k() const { return k_; }
  double anchor() const { return x_; }
  bool is_point_mass() const { return k_ == 0.0; }

  /// Density in s.
  double density_s(double s) const;
  /// Density in eta on [-|x|, |x|].
  double density(double eta) const;

  /// int g(s) w_k(s) ds with panels graded toward the end `peak_sign` (+1 or
  /// -1), first panel of width `width`, optionally ignoring the part of the
  /// interval farther than `cutoff` from the peak.
  template <typename G>
  double integrate_s(G&& g, int peak_sign = 1, double width = 2.0, double cutoff = 2.0) const
  {
    if (is_point_mass()) return g(1.0);
    return integrate_u([&](double u) { return g(peak_sign > 0 ? 1.0 - u : u - 1.0); }, peak_sign, width, cutoff);
  }

  /// Same integral with g taking u = |s - peak_sign| in [0, 2] directly, so
  /// integrands that depend on the distance to the peak keep full precision.
  template <typename G>
  double integrate_u(G&& g, int peak_sign = 1, double width = 2.0, double cutoff = 2.0) const;

  /// int g(eta) dmu_x(eta).
  template <typename G>
  double integrate(G&& g) const
  {
    if (is_point_mass()) return g(x_);
    return integrate_s([&](double s) { return g(s * x_); });
  }

  double mass() const;
  double moment(double y) const;

 private:
  double k_;
  double x_;
  double ck_;
};

/// Checks mass (1e-8) and the moment identity against the series kernel
/// (1e-6) on `pairs` sampled (x, y); throws RouteDisagreement on failure and
/// returns the worst relative moment error otherwise. Cached per k.
double validate_rosler(double k, int pairs = 50);

// ---------------------------------------------------------------------------

template <typename G>
double RoslerMeasure1D::integrate_u(G&& g, int peak_sign, double width, double cutoff) const
{
  constexpr int kNodes = 20;
  if (is_point_mass()) return g(0.0);
  // The density behaves like u^e0 at the peak end and (2 - u)^e1 at the far end.
  const double e0 = peak_sign > 0 ? k_ - 1.0 : k_;
  const double e1 = peak_sign > 0 ? k_ : k_ - 1.0;
  cutoff = std::min(cutoff, 2.0);
  width = std::min(width, cutoff);

  if (width >= 1.0 && cutoff >= 2.0) return ck_ * jacobi_panel(g, 0.0, 2.0, e1, e0, kNodes);

  std::vector<double> edges{0.0};
  double e = width;
  while (e < std::min(1.0, cutoff)) {
    edges.push_back(e);
    e *= 2.0;
  }
  if (cutoff >= 2.0) {
    if (edges.back() < 1.0) edges.push_back(1.0);
    edges.push_back(2.0);
  } else {
    while (edges.back() < cutoff) edges.push_back(std::min(cutoff, 2.0 * edges.back()));
  }

  double acc = 0.0;
  const std::size_t panels = edges.size() - 1;
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = edges[i], b = edges[i + 1];
    const bool first = i == 0;
    const bool last = cutoff >= 2.0 && i + 1 == panels;
    if (first && last) {
      acc += jacobi_panel(g, a, b, e1, e0, kNodes);
    } else if (first) {
      acc += jacobi_panel([&](double u) { return g(u) * std::pow(2.0 - u, e1); }, a, b, 0.0, e0, kNodes);
    } else if (last) {
      acc += jacobi_panel([&](double u) { return g(u) * std::pow(u, e0); }, a, b, e1, 0.0, kNodes);
    } else {
      acc += legendre_panel([&](double u) { return g(u) * std::pow(u, e0) * std::pow(2.0 - u, e1); }, a, b, kNodes);
    }
  }
  return ck_ * acc;
}

}  // namespace dunkl

#endif
