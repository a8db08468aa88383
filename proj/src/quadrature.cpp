#include "dunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace dunkl {

namespace {

GaussRule golub_welsch_jacobi(int n, double a, double b)
{
  if (n < 1) throw std::invalid_argument("Gauss rule needs at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("Jacobi exponents must exceed -1");

  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (int i = 1; i < n; ++i) {
    const double s = 2.0 * i + ab;
    diag(i) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int i = 1; i < n; ++i) {
    const double s = 2.0 * i + ab;
    double beta;
    if (i == 1)
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      beta = 4.0 * i * (i + a) * (i + b) * (i + ab) / (s * s * (s + 1.0) * (s - 1.0));
    off(i - 1) = std::sqrt(beta);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NoConvergence("Golub-Welsch eigensolver failed");

  const double log_mu0 =
      (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_jacobi(int n, double a, double b)
{
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<GaussRule>(golub_welsch_jacobi(n, a, b))).first;
  return *it->second;
}

std::vector<double> make_breaks(double lo, double hi, std::vector<double> interior)
{
  std::vector<double> out{lo};
  std::sort(interior.begin(), interior.end());
  const double tol = 1e-13 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (double x : interior)
    if (x > lo + tol && x < hi - tol && x > out.back() + tol) out.push_back(x);
  out.push_back(hi);
  return out;
}

}  // namespace dunkl
