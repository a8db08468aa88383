#include "dunkl/field.hpp"

#include <cmath>
#include <limits>

namespace dunkl {

Point ScalarField::gradient(const Point& x) const
{
  if (g_) return g_(x);
  const double h = std::max(1e-6, 1e-8 * x.norm());
  Point grad(x.size());
  Point xp = x, xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    grad(i) = (f_(xp) - f_(xm)) / (2.0 * h);
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return grad;
}

double ScalarField::second_directional(const Point& x, const Point& dir) const
{
  const double h = 1e-3 * std::max(1.0, x.norm()) / std::max(1.0, dir.norm());
  const double f0 = f_(x);
  const double f1 = f_(x + h * dir), fm1 = f_(x - h * dir);
  const double f2 = f_(x + 2.0 * h * dir), fm2 = f_(x - 2.0 * h * dir);
  return (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
}

namespace fields {

namespace {

Box centered_box(const Point& c, double half)
{
  return {c.array() - half, c.array() + half};
}

}  // namespace

double smoothstep(double u)
{
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double s = 0.5 * (u + 1.0);
  return s * s * (3.0 - 2.0 * s);
}

ScalarField constant(double c, int dim)
{
  ScalarField f([c](const Point&) { return c; }, [dim](const Point&) { return Point(Point::Zero(dim)); });
  f.mark_constant(c);
  return f;
}

ScalarField zero(int dim)
{
  ScalarField f = constant(0.0, dim);
  f.with_support(centered_box(Point::Zero(dim), 0.0));
  return f;
}

ScalarField coordinate(int axis, int dim)
{
  return ScalarField([axis](const Point& x) { return x(axis); },
                     [axis, dim](const Point&) {
                       Point g = Point::Zero(dim);
                       g(axis) = 1.0;
                       return g;
                     });
}

ScalarField squared_norm(int /*dim*/)
{
  return ScalarField([](const Point& x) { return x.squaredNorm(); }, [](const Point& x) { return Point(2.0 * x); });
}

ScalarField gaussian_bump(const Point& center, double width, double amplitude)
{
  const double s2 = 2.0 * width * width;
  ScalarField f([=](const Point& x) { return amplitude * std::exp(-(x - center).squaredNorm() / s2); },
                [=](const Point& x) {
                  const double v = amplitude * std::exp(-(x - center).squaredNorm() / s2);
                  return Point(-(2.0 / s2) * v * (x - center));
                });
  // exp(-u^2/2) < 1e-18 for u > 9.1
  f.with_support(centered_box(center, 9.1 * width));
  return f;
}

ScalarField log_norm(int dim)
{
  ScalarField f(
      [](const Point& x) {
        const double r = x.norm();
        return r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity();
      },
      [](const Point& x) {
        const double r2 = x.squaredNorm();
        return Point(x / r2);
      });
  for (int i = 0; i < dim; ++i) {
    Point n = Point::Zero(dim);
    n(i) = 1.0;
    f.with_kink({n, 0.0});
  }
  return f;
}

ScalarField sign_coordinate(int axis, int dim)
{
  ScalarField f(
      [axis](const Point& x) {
        const double v = x(axis);
        return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
      },
      [dim](const Point&) { return Point(Point::Zero(dim)); });
  Point n = Point::Zero(dim);
  n(axis) = 1.0;
  f.with_kink({n, 0.0});
  return f;
}

ScalarField ball_indicator(const Point& center, double radius)
{
  const double r2 = radius * radius;
  ScalarField f([=](const Point& x) { return (x - center).squaredNorm() <= r2 ? 1.0 : 0.0; },
                [dim = center.size()](const Point&) { return Point(Point::Zero(dim)); });
  f.with_support(centered_box(center, radius));
  if (center.size() == 1) {
    f.with_kink({make_point1(1.0), center(0) - radius});
    f.with_kink({make_point1(1.0), center(0) + radius});
  }
  return f;
}

ScalarField smooth_bump(const Point& center, double radius, double amplitude)
{
  const double r2 = radius * radius;
  ScalarField f(
      [=](const Point& x) {
        const double u = (x - center).squaredNorm() / r2;
        return u < 1.0 ? amplitude * std::exp(1.0 - 1.0 / (1.0 - u)) : 0.0;
      },
      [=](const Point& x) {
        const double u = (x - center).squaredNorm() / r2;
        if (u >= 1.0) return Point(Point::Zero(x.size()));
        const double v = amplitude * std::exp(1.0 - 1.0 / (1.0 - u));
        return Point(-v / ((1.0 - u) * (1.0 - u)) * (2.0 / r2) * (x - center));
      });
  f.with_support(centered_box(center, radius));
  return f;
}

ScalarField tent(const Point& center, double radius)
{
  ScalarField f([=](const Point& x) { return std::max(0.0, 1.0 - (x - center).norm() / radius); },
                [=](const Point& x) {
                  const double r = (x - center).norm();
                  if (r >= radius || r == 0.0) return Point(Point::Zero(x.size()));
                  return Point(-(x - center) / (r * radius));
                });
  f.with_support(centered_box(center, radius));
  for (Eigen::Index i = 0; i < center.size(); ++i) {
    Point n = Point::Zero(center.size());
    n(i) = 1.0;
    f.with_kink({n, center(i)});
  }
  return f;
}

ScalarField smooth_ball_indicator(const Point& center, double radius, double half_width)
{
  ScalarField f([=](const Point& x) { return smoothstep((radius - (x - center).norm()) / half_width); });
  f.with_support(centered_box(center, radius + half_width));
  if (center.size() == 1) {
    Point n = Point::Ones(1);
    for (double e : {-radius - half_width, -radius + half_width, radius - half_width, radius + half_width})
      f.with_kink({n, center(0) + e});
  }
  return f;
}

ScalarField scaled(double a, const ScalarField& f)
{
  ScalarField out([a, f](const Point& x) { return a * f(x); }, [a, f](const Point& x) { return Point(a * f.gradient(x)); });
  if (f.support()) out.with_support(*f.support());
  out.with_kinks(f.kinks());
  if (f.is_constant()) out.mark_constant(a * *f.constant_value());
  return out;
}

ScalarField linear_combination(double a, const ScalarField& f, double b, const ScalarField& g)
{
  ScalarField out([=](const Point& x) { return a * f(x) + b * g(x); },
                  [=](const Point& x) { return Point(a * f.gradient(x) + b * g.gradient(x)); });
  if (f.support() && g.support()) out.with_support(f.support()->hull(*g.support()));
  out.with_kinks(f.kinks());
  out.with_kinks(g.kinks());
  if (f.is_constant() && g.is_constant()) out.mark_constant(a * *f.constant_value() + b * *g.constant_value());
  return out;
}

ScalarField sum(const ScalarField& f, const ScalarField& g) { return linear_combination(1.0, f, 1.0, g); }

ScalarField product(const ScalarField& f, const ScalarField& g)
{
  ScalarField out([=](const Point& x) { return f(x) * g(x); },
                  [=](const Point& x) { return Point(f(x) * g.gradient(x) + g(x) * f.gradient(x)); });
  if (f.support() && g.support()) {
    Box b{f.support()->lo.cwiseMax(g.support()->lo), f.support()->hi.cwiseMin(g.support()->hi)};
    b.hi = b.hi.cwiseMax(b.lo);
    out.with_support(b);
  } else if (f.support()) {
    out.with_support(*f.support());
  } else if (g.support()) {
    out.with_support(*g.support());
  }
  out.with_kinks(f.kinks());
  out.with_kinks(g.kinks());
  if (f.is_constant() && g.is_constant()) out.mark_constant(*f.constant_value() * *g.constant_value());
  return out;
}

ScalarField dilated(const ScalarField& f, double t)
{
  ScalarField out([=](const Point& x) { return f(Point(t * x)); },
                  [=](const Point& x) { return Point(t * f.gradient(Point(t * x))); });
  if (f.support()) out.with_support(Box{f.support()->lo / t, f.support()->hi / t});
  for (const auto& k : f.kinks()) out.with_kink({k.normal, k.offset / t});
  if (f.is_constant()) out.mark_constant(*f.constant_value());
  return out;
}

}  // namespace fields

}  // namespace dunkl
