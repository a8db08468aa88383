#ifndef DUNKL_TABULATE_HPP
#define DUNKL_TABULATE_HPP

#include <functional>
#include <vector>

namespace dunkl {

/// Piecewise polynomial interpolant of a function of one variable: each
/// panel holds `nodes` Chebyshev points of the first kind (panel endpoints
/// are never sampled) and is evaluated by the barycentric formula.
class PanelTable {
 public:
  PanelTable() = default;
  PanelTable(const std::function<double(double)>& g, std::vector<double> breaks, int nodes = 16);

  double operator()(double x) const;
  double lo() const { return breaks_.front(); }
  double hi() const { return breaks_.back(); }
  const std::vector<double>& breaks() const { return breaks_; }
  int nodes() const { return n_; }
  std::size_t samples() const { return values_.size(); }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;  // panel-major
  std::vector<double> unit_;    // Chebyshev points on [-1, 1]
  std::vector<double> bary_;
  int n_ = 0;
};

/// Breakpoints for a function with features (cusps, jumps, support edges)
/// at `features`: every gap between consecutive features is cut
/// geometrically toward both ends over `levels` halvings. Beyond the
/// outermost features the cuts are graded toward them up to +-start and then
/// placed at doublings of start out to +-outer.
std::vector<double> graded_breaks(std::vector<double> features, double start, double outer, int levels = 6);

}  // namespace dunkl

#endif
