#ifndef DUNKL_HEAT_HPP
#define DUNKL_HEAT_HPP

#include "dunkl/field.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/measure.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/report.hpp"

#include <vector>

namespace dunkl {

enum class HeatRoute {
  RadialTranslation,  // Rosler integral of the translated Gaussian
  Spectral,           // Dunkl transform of e^{-t |xi|^2}, 1D quadrature per axis
  ClassicalGaussian,  // multiplicity zero only
  Series,             // c^-1 (2t)^{-N/2} e^{-(|x|^2+|y|^2)/4t} E(x, y/2t), guarded
};

const char* to_string(HeatRoute r);

/// h_t(x, y) for sign-change groups (per-axis product) or any group with
/// vanishing multiplicity (Gaussian).
class HeatKernel {
 public:
  explicit HeatKernel(const Geometry& geo, HeatRoute primary = HeatRoute::RadialTranslation);

  const Geometry& geometry() const { return *geo_; }
  HeatRoute primary() const { return primary_; }
  double c_kappa() const { return c_kappa_; }
  double homogeneous_dim() const { return geo_->homogeneous_dim(); }

  double operator()(double t, const Point& x, const Point& y) const { return value(primary_, t, x, y); }
  double value(HeatRoute route, double t, const Point& x, const Point& y) const;
  /// log h_t(x, y); finite far into the Gaussian tail where the value
  /// itself underflows. Spectral route is not available here.
  double log_value(double t, const Point& x, const Point& y) const;

  /// Per-axis rank-one kernel with normalization c_1D(k) = 2^{2k+1/2} Gamma(k+1/2).
  static double value_1d(HeatRoute route, double k, double t, double x, double y);
  static double log_value_1d(double k, double t, double x, double y);

  /// Relative disagreement |primary - other| / primary; throws
  /// RouteDisagreement above `tol`.
  double cross_validate(HeatRoute other, double t, const Point& x, const Point& y, double tol = 1e-5) const;

 private:
  const Geometry* geo_;
  HeatRoute primary_;
  double c_kappa_;
  bool classical_;
  std::vector<double> axis_k_;
};

struct HeatApplyOptions {
  double rel_tol = 1e-8;
  /// Gaussian reach: the kernel is ignored farther than sqrt(4 t reach) from
  /// the orbit of x (reach 45 drops below 1e-19 of the peak).
  double reach = 45.0;
};

/// H_t f(x) = int h_t(x, y) f(y) d omega(y).
double heat_apply(const HeatKernel& h, const ScalarField& f, double t, const Point& x, const HeatApplyOptions& opt = {});

/// int h_t(x, y) d omega(y).
double heat_mass(const HeatKernel& h, double t, const Point& x, const HeatApplyOptions& opt = {});

struct HeatSample {
  double t;
  Point x;
  Point y;
};

/// (t, x, y) grid: t log-spaced on [t_lo, t_hi] with nt points, x and y on
/// [-L, L]^N with nx points per axis.
std::vector<HeatSample> heat_grid(int dim, double t_lo, double t_hi, int nt, double L, int nx);
/// Grid with every interval halved (contains the base grid).
std::vector<HeatSample> heat_grid_doubled(int dim, double t_lo, double t_hi, int nt, double L, int nx);

struct GaussianBoundsResult {
  double c_upper = 0.0;
  double c_lower = 0.0;
  RatioStats upper;  // h / upper envelope
  RatioStats lower;  // h / lower envelope
};

/// Ratios of h_t(x, y) to the two Gaussian envelopes. A c_upper that is not
/// positive is the largest c in [1e-4, 1] whose upper ratio sup stays within
/// a factor 10 of its value at c = 1e-4; a c_lower that is not positive is the
/// smallest c in [1e-4, 4] whose lower ratio inf reaches 99% of its value at
/// c = 4.
GaussianBoundsResult gaussian_bounds(const HeatKernel& h, const std::vector<HeatSample>& samples, double c_upper = 0.0,
                                     double c_lower = 0.0);

VerificationReport gaussian_bounds_check(const HeatKernel& h, const std::vector<HeatSample>& samples,
                                         double c_upper = 0.0, double c_lower = 0.0);

struct HolderSample {
  double t;
  Point x;
  Point y;
  Point y2;
};

/// sup of |h_t(x,y) - h_t(x,y')| over the Holder envelope at constant c.
/// Throws RejectedSample when |y - y'| >= sqrt(t).
RatioStats holder_ratios(const HeatKernel& h, const std::vector<HolderSample>& samples, double c);

VerificationReport holder_check(const HeatKernel& h, const std::vector<HolderSample>& samples, double c);

/// omega(B(x, r)) with the closed form in rank one and quadrature otherwise.
double ball_measure(const Geometry& geo, const Point& x, double r);

}  // namespace dunkl

#endif
