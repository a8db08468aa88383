#include "dunkl/operators.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

namespace dunkl {

double dunkl_derivative(const Geometry& geo, const Point& xi, const ScalarField& f, const Point& x,
                        const OperatorOptions& opt)
{
  double v = f.gradient(x).dot(xi);
  const auto& R = geo.roots();
  const double fx = f(x);
  for (std::size_t i : R.positive_indices()) {
    const double k = R.multiplicity(i);
    if (k == 0.0) continue;
    const Point& a = R.root(i);
    const double ax = a.dot(x);
    double q;
    if (std::abs(ax) < opt.switch_distance) {
      const Point x0 = x - 0.5 * ax * a;
      q = f.gradient(x0).dot(a);
    } else {
      q = (fx - f(reflect(a, x))) / ax;
    }
    v += k * a.dot(xi) * q;
  }
  return v;
}

double dunkl_partial(const Geometry& geo, int j, const ScalarField& f, const Point& x, const OperatorOptions& opt)
{
  Point e = Point::Zero(x.size());
  e(j) = 1.0;
  return dunkl_derivative(geo, e, f, x, opt);
}

ScalarField dunkl_derivative_field(const Geometry& geo, const Point& xi, const ScalarField& f,
                                   const OperatorOptions& opt)
{
  return ScalarField([&geo, xi, f, opt](const Point& x) { return dunkl_derivative(geo, xi, f, x, opt); });
}

double dunkl_laplacian(const Geometry& geo, const ScalarField& f, const Point& x, const OperatorOptions& opt)
{
  const auto n = x.size();
  double v = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Point e = Point::Zero(n);
    e(i) = 1.0;
    v += f.second_directional(x, e);
  }
  const auto& R = geo.roots();
  const double fx = f(x);
  for (std::size_t i : R.positive_indices()) {
    const double k = R.multiplicity(i);
    if (k == 0.0) continue;
    const Point& a = R.root(i);
    const double ax = a.dot(x);
    double delta;
    if (std::abs(ax) < opt.switch_distance) {
      const Point x0 = x - 0.5 * ax * a;
      delta = 0.5 * f.second_directional(x0, a);
    } else {
      delta = f.gradient(x).dot(a) / ax - (fx - f(reflect(a, x))) / (ax * ax);
    }
    v += 2.0 * k * delta;
  }
  return v;
}

namespace {

void check_guard(double z, const KernelOptions& opt)
{
  if (!(std::abs(z) <= opt.guard))
    throw SeriesDivergenceGuard("|xy| = " + std::to_string(std::abs(z)) + " exceeds the series range " +
                                std::to_string(opt.guard));
}

// 1F1(a; b; z) for z >= 0 by its positive-term series.
long double kummer_positive(long double a, long double b, long double z, const KernelOptions& opt)
{
  long double term = 1.0L, sum = 1.0L;
  for (int n = 1; n <= 4 * opt.max_terms; ++n) {
    term *= (a + n - 1) * z / ((b + n - 1) * n);
    sum += term;
    if (n > z && term < opt.rel_stop * sum) return sum;
  }
  throw NoConvergence("confluent series did not converge");
}

}  // namespace

double dunkl_kernel_series(double k, double z, const KernelOptions& opt)
{
  check_guard(z, opt);
  long double term = 1.0L, sum = 1.0L;
  const long double zz = z;
  for (int n = 1; n <= opt.max_terms; ++n) {
    term *= zz / (n + ((n % 2) ? 2.0L * k : 0.0L));
    sum += term;
    if (n > std::abs(z) && std::abs(term) < opt.rel_stop * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

double dunkl_kernel_1d(double k, double x, double y, const KernelOptions& opt)
{
  const double z = x * y;
  check_guard(z, opt);
  if (z >= 0.0 || k == 0.0) return dunkl_kernel_series(k, z, opt);
  return static_cast<double>(std::exp(static_cast<long double>(z)) * kummer_positive(k, 2.0 * k + 1.0, -2.0 * z, opt));
}

double dunkl_kernel_scaled_1d(double k, double z)
{
  if (k == 0.0) return std::exp(z - std::abs(z));
  if (std::abs(z) <= 20.0) {
    // e^{-|z|} E(z) = e^{-2|z|} 1F1(a; 2k+1; 2|z|), a = k+1 (z > 0) or k (z < 0)
    const long double a = z > 0.0 ? k + 1.0 : k;
    const long double s = kummer_positive(a, 2.0L * k + 1.0L, 2.0L * std::abs(z), KernelOptions{});
    return static_cast<double>(std::exp(-2.0L * std::abs(z)) * s);
  }
  RoslerMeasure1D mu(k, 1.0);
  const int sign = z > 0.0 ? 1 : -1;
  const double az = std::abs(z);
  return mu.integrate_s([&](double s) { return std::exp(z * s - az); }, sign, 1.0 / az, 45.0 / az);
}

double dunkl_kernel(const Geometry& geo, const Point& x, const Point& y, const KernelOptions& opt)
{
  if (!geo.is_sign_group()) throw UnsupportedGroup("Dunkl kernel is only evaluated for sign-change groups");
  double v = 1.0;
  const auto& ks = geo.axis_multiplicities();
  for (Eigen::Index i = 0; i < x.size(); ++i) v *= dunkl_kernel_1d(ks[static_cast<std::size_t>(i)], x(i), y(i), opt);
  return v;
}

double normalized_bessel(double nu, double z)
{
  if (!(nu > -1.0)) throw std::invalid_argument("normalized Bessel needs nu > -1");
  const double az = std::abs(z);
  if (az < 8.0) {
    const double q = -0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 200; ++m) {
      term *= q / (m * (m + nu));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum) && m > 4) break;
    }
    return sum;
  }
  double J;
  if (nu >= 0.0) {
    J = std::cyl_bessel_j(nu, az);
  } else {
    J = 2.0 * (nu + 1.0) / az * std::cyl_bessel_j(nu + 1.0, az) - std::cyl_bessel_j(nu + 2.0, az);
  }
  return std::exp(std::lgamma(nu + 1.0) + nu * std::log(2.0 / az)) * J;
}

ComplexValue dunkl_kernel_imaginary(double k, double z)
{
  return {normalized_bessel(k - 0.5, z), z / (2.0 * k + 1.0) * normalized_bessel(k + 0.5, z)};
}

RoslerMeasure1D::RoslerMeasure1D(double k, double x) : k_(k), x_(x), ck_(0.0)
{
  if (k < 0.0) throw std::invalid_argument("multiplicity must be nonnegative");
  if (k > 0.0) ck_ = std::exp(std::lgamma(k + 0.5) - 0.5 * std::log(std::numbers::pi) - std::lgamma(k));
}

double RoslerMeasure1D::density_s(double s) const
{
  if (is_point_mass() || s <= -1.0 || s >= 1.0) return 0.0;
  return ck_ * std::pow(1.0 - s, k_ - 1.0) * std::pow(1.0 + s, k_);
}

double RoslerMeasure1D::density(double eta) const
{
  if (x_ == 0.0) return 0.0;
  return density_s(eta / x_) / std::abs(x_);
}

double RoslerMeasure1D::mass() const
{
  return integrate_s([](double) { return 1.0; });
}

double RoslerMeasure1D::moment(double y) const
{
  return integrate([y](double eta) { return std::exp(eta * y); });
}

double validate_rosler(double k, int pairs)
{
  static std::mutex mutex;
  static std::map<std::pair<double, int>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({k, pairs});
    if (it != cache.end()) return it->second;
  }
  RoslerMeasure1D unit(k, 1.0);
  if (std::abs(unit.mass() - 1.0) > 1e-8)
    throw RouteDisagreement("Rosler density mass " + std::to_string(unit.mass()) + " is not 1");
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const double x = u(rng), y = u(rng);
    const double m = RoslerMeasure1D(k, x).moment(y);
    const double e = dunkl_kernel_1d(k, x, y);
    worst = std::max(worst, std::abs(m - e) / std::abs(e));
  }
  if (worst > 1e-6)
    throw RouteDisagreement("Rosler moment identity fails at relative error " + std::to_string(worst));
  std::lock_guard<std::mutex> lock(mutex);
  cache[{k, pairs}] = worst;
  return worst;
}

}  // namespace dunkl
