#ifndef DUNKL_MEASURE_HPP
#define DUNKL_MEASURE_HPP

#include "dunkl/field.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/quadrature.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace dunkl {

struct BallSpec {
  enum class Kind { Euclidean, Orbit };
  Point center;
  double radius = 1.0;
  Kind kind = Kind::Euclidean;
};

using Interval = std::pair<double, double>;

/// Integration domain for iterated quadrature: a box, or a union of equal
/// balls with an optional union of smaller balls removed (shells around an
/// orbit). Every region can report its one-dimensional sections exactly.
class Region {
 public:
  static Region box(Box b);
  static Region ball(const Point& center, double radius);
  static Region balls(std::vector<Point> centers, double radius);
  static Region orbit_ball(const Geometry& geo, const Point& x, double radius);
  static Region from(const Geometry& geo, const BallSpec& b);

  /// Remove the union of B(c, radius) over `centers`.
  Region& exclude(std::vector<Point> centers, double radius);
  /// Intersect with a box.
  Region& clip(const Box& b);

  int dim() const { return dim_; }
  Box bounding_box() const;
  bool contains(const Point& x) const;

  /// Sorted disjoint intervals of {t : (prefix_0..prefix_{level-1}, t, *) in
  /// the projection of the region to the first level+1 coordinates}.
  std::vector<Interval> section(int level, const Point& prefix) const;

 private:
  int dim_ = 0;
  std::optional<Box> box_;
  std::vector<Point> centers_;
  double radius_ = 0.0;
  std::vector<Point> holes_;
  double hole_radius_ = 0.0;
};

struct MeasureOptions {
  double rel_tol = 1e-7;
  double abs_tol = 0.0;
  int max_intervals = 2000;
};

/// Raw integrand with extra breakpoint hints.
using Integrand = std::function<double(const Point&)>;

/// Iterated adaptive Gauss-Kronrod integral of f against h_k dx (or dx when
/// `weighted` is false). Cuts are placed on every root hyperplane and every
/// hint hyperplane that is resolvable at the current level.
QuadResult integrate(const Geometry& geo, const Integrand& f, const Region& region,
                     std::span<const Hyperplane> kinks = {}, const MeasureOptions& opt = {}, bool weighted = true);

/// ScalarField overload: the field's kink hints are used and a Box region is
/// clipped to the field's support when one is declared.
QuadResult integrate(const Geometry& geo, const ScalarField& f, const Region& region, const MeasureOptions& opt = {});

double ball_volume(const Geometry& geo, const Point& x, double r, const MeasureOptions& opt = {});
double orbit_ball_volume(const Geometry& geo, const Point& x, double r, const MeasureOptions& opt = {});
double volume(const Geometry& geo, const BallSpec& b, const MeasureOptions& opt = {});

/// Closed form of omega(B(x, r)) for the rank-one weight 2^k |x|^{2k}.
double ball_volume_rank_one(double k, double x, double r);
/// omega([a, b]) for the rank-one weight.
double interval_measure_rank_one(double k, double a, double b);

/// r^N prod_R (|<a, x>| + r)^k(a).
double surrogate_volume(const Geometry& geo, const Point& x, double r);

struct GrowthReport {
  double ratio = 0.0;
  double lower_power = 0.0;  // (r1/r2)^N
  double upper_power = 0.0;  // (r1/r2)^hom_dim
  double lower_constant = 0.0;  // ratio / lower_power
  double upper_constant = 0.0;  // upper_power / ratio
  bool violated = false;
};

/// omega(B(x, r1)) / omega(B(x, r2)) against its two power brackets. The
/// check is violated when the ratio leaves [C^-1 (r1/r2)^N, C (r1/r2)^hom_dim].
GrowthReport growth_check(const Geometry& geo, const Point& x, double r1, double r2, double C = 1.0,
                          const MeasureOptions& opt = {});

/// Integral of exp(-|x|^2/2) h_k(x) dx.
double gaussian_normalization(const Geometry& geo, double rel_tol = 1e-11);

/// Closed form of gaussian_normalization for sign groups.
double gaussian_normalization_product(const std::vector<double>& axis_k);

/// Fixed tensor-product rule integrating against h_k on a box for sign
/// groups. Each axis is cut at 0 and uses Gauss-Jacobi with the |x|^{2k}
/// weight built into the rule, so polynomials of degree < 2n per axis are
/// integrated exactly.
class QuadratureScheme {
 public:
  QuadratureScheme(const Geometry& geo, const Box& box, int nodes_per_axis);

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const Box& region() const { return box_; }
  int order() const { return order_; }

  template <typename F>
  double integrate(F&& f) const
  {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

  /// Max relative error over the monomials x_i^m, m < order, against their
  /// closed-form weighted integrals.
  double validate() const;

 private:
  Box box_;
  std::vector<double> axis_k_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  int order_ = 0;
};

}  // namespace dunkl

#endif
