#ifndef DUNKL_FIELD_HPP
#define DUNKL_FIELD_HPP

#include "dunkl/core.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dunkl {

/// Axis-aligned box [lo, hi].
struct Box {
  Point lo;
  Point hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Point& x) const { return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all(); }
  Box hull(const Box& o) const { return {lo.cwiseMin(o.lo), hi.cwiseMax(o.hi)}; }
  Box grown(double margin) const { return {lo.array() - margin, hi.array() + margin}; }
};

/// Hyperplane <normal, x> = offset, used as a hint for where a field has a
/// kink or jump so quadrature can split there.
struct Hyperplane {
  Point normal;
  double offset = 0.0;
};

/// A real function on R^N with an optional analytic gradient and hints about
/// where it lives (support box) and where it is not smooth.
class ScalarField {
 public:
  using Eval = std::function<double(const Point&)>;
  using Grad = std::function<Point(const Point&)>;

  ScalarField() = default;
  explicit ScalarField(Eval f, Grad g = nullptr) : f_(std::move(f)), g_(std::move(g)) {}

  double operator()(const Point& x) const { return f_(x); }

  /// Analytic gradient if supplied, else central differences with step
  /// max(1e-6, 1e-8 |x|).
  Point gradient(const Point& x) const;
  bool has_gradient() const { return static_cast<bool>(g_); }

  /// Second derivative along `dir` (not normalized), five-point stencil.
  double second_directional(const Point& x, const Point& dir) const;

  const std::optional<Box>& support() const { return support_; }
  const std::vector<Hyperplane>& kinks() const { return kinks_; }
  const std::optional<double>& constant_value() const { return constant_; }
  bool is_constant() const { return constant_.has_value(); }

  ScalarField& with_support(Box b)
  {
    support_ = std::move(b);
    return *this;
  }
  ScalarField& with_kink(Hyperplane h)
  {
    kinks_.push_back(std::move(h));
    return *this;
  }
  ScalarField& with_kinks(const std::vector<Hyperplane>& hs)
  {
    kinks_.insert(kinks_.end(), hs.begin(), hs.end());
    return *this;
  }
  ScalarField& mark_constant(double c)
  {
    constant_ = c;
    return *this;
  }

 private:
  Eval f_;
  Grad g_;
  std::optional<Box> support_;
  std::vector<Hyperplane> kinks_;
  std::optional<double> constant_;
};

namespace fields {

ScalarField constant(double c, int dim);
ScalarField zero(int dim);
/// x_j (0-based axis).
ScalarField coordinate(int axis, int dim);
/// |x|^2.
ScalarField squared_norm(int dim);
/// amplitude * exp(-|x - center|^2 / (2 width^2)); support box where the
/// value exceeds 1e-18 of the peak.
ScalarField gaussian_bump(const Point& center, double width, double amplitude = 1.0);
/// log |x|; singular at the origin, the canonical BMO-but-not-VMO symbol.
ScalarField log_norm(int dim);
/// sign(x_axis) with sign(0) = 0.
ScalarField sign_coordinate(int axis, int dim);
/// C-infinity bump exp(1 - 1/(1 - |x-c|^2/r^2)) supported in B(c, r).
ScalarField smooth_bump(const Point& center, double radius, double amplitude = 1.0);
/// Lipschitz tent max(0, 1 - |x - c| / r).
ScalarField tent(const Point& center, double radius);
/// Smoothed indicator of B(c, r): 1 inside B(c, r - w), 0 outside B(c, r + w),
/// C^1 smoothstep across the transition of half-width w.
/// Hard indicator of the closed ball B(c, r); support box and, in one
/// dimension, kinks at c -+ r.
ScalarField ball_indicator(const Point& center, double radius);
ScalarField smooth_ball_indicator(const Point& center, double radius, double half_width);

ScalarField scaled(double a, const ScalarField& f);
ScalarField sum(const ScalarField& f, const ScalarField& g);
ScalarField linear_combination(double a, const ScalarField& f, double b, const ScalarField& g);
ScalarField product(const ScalarField& f, const ScalarField& g);
/// x -> f(t x).
ScalarField dilated(const ScalarField& f, double t);

/// C^1 smoothstep S(u): 0 for u <= -1, 1 for u >= 1.
double smoothstep(double u);

}  // namespace fields

}  // namespace dunkl

#endif
