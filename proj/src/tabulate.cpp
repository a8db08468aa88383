#include "dunkl/tabulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dunkl {

PanelTable::PanelTable(const std::function<double(double)>& g, std::vector<double> breaks, int nodes)
    : breaks_(std::move(breaks)), n_(nodes)
{
  if (breaks_.size() < 2 || n_ < 2) throw std::invalid_argument("panel table needs a panel and two nodes");
  if (!std::is_sorted(breaks_.begin(), breaks_.end())) throw std::invalid_argument("panel breaks must be sorted");
  for (int j = 0; j < n_; ++j) {
    const double th = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * n_);
    unit_.push_back(-std::cos(th));
    bary_.push_back((j % 2 ? -1.0 : 1.0) * std::sin(th));
  }
  values_.reserve((breaks_.size() - 1) * static_cast<std::size_t>(n_));
  for (std::size_t p = 0; p + 1 < breaks_.size(); ++p) {
    const double a = breaks_[p], b = breaks_[p + 1];
    for (double u : unit_) values_.push_back(g(0.5 * (a + b) + 0.5 * (b - a) * u));
  }
}

double PanelTable::operator()(double x) const
{
  if (x < lo() || x > hi()) throw std::out_of_range("point outside the tabulated range");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t p = static_cast<std::size_t>(it - breaks_.begin());
  p = std::clamp<std::size_t>(p, 1, breaks_.size() - 1) - 1;
  const double a = breaks_[p], b = breaks_[p + 1];
  const double u = (2.0 * x - a - b) / (b - a);
  const double* v = values_.data() + p * static_cast<std::size_t>(n_);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double d = u - unit_[static_cast<std::size_t>(j)];
    if (d == 0.0) return v[j];
    const double w = bary_[static_cast<std::size_t>(j)] / d;
    num += w * v[j];
    den += w;
  }
  return num / den;
}

std::vector<double> graded_breaks(std::vector<double> features, double start, double outer, int levels)
{
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < features.size(); ++i) {
    const double a = features[i], b = features[i + 1], h = 0.5 * (b - a);
    out.push_back(a);
    for (int m = 1; m <= levels; ++m) {
      out.push_back(a + h * std::ldexp(1.0, -m));
      out.push_back(b - h * std::ldexp(1.0, -m));
    }
    out.push_back(a + h);
  }
  const double left = features.empty() ? 0.0 : features.front();
  const double right = features.empty() ? 0.0 : features.back();
  out.push_back(left);
  out.push_back(right);
  for (int m = 1; m <= levels; ++m) {
    if (-start < left) out.push_back(left - (left + start) * std::ldexp(1.0, -m));
    if (start > right) out.push_back(right + (start - right) * std::ldexp(1.0, -m));
  }
  for (double r = start; r < outer; r *= 2.0) {
    if (-r < left) out.push_back(-r);
    if (r > right) out.push_back(r);
  }
  out.push_back(-outer);
  out.push_back(outer);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove_if(out.begin(), out.end(), [&](double x) { return x < -outer || x > outer; }), out.end());
  return out;
}

}  // namespace dunkl
