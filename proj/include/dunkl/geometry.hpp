#ifndef DUNKL_GEOMETRY_HPP
#define DUNKL_GEOMETRY_HPP

#include "dunkl/core.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

/// Reflection across the hyperplane orthogonal to a normalized root:
/// x - <alpha, x> alpha. Accepts any Eigen vector expressions.
template <typename DerivedA, typename DerivedX>
auto reflect(const Eigen::MatrixBase<DerivedA>& alpha, const Eigen::MatrixBase<DerivedX>& x)
{
  using Scalar = typename DerivedX::Scalar;
  const Scalar proj = alpha.dot(x);
  return VectorX<Scalar>(x - proj * alpha);
}

/// Matrix of the reflection sigma_alpha, I - alpha alpha^T.
template <typename Derived>
MatrixX<typename Derived::Scalar> reflection_matrix(const Eigen::MatrixBase<Derived>& alpha)
{
  using Scalar = typename Derived::Scalar;
  const auto n = alpha.size();
  return MatrixX<Scalar>::Identity(n, n) - alpha * alpha.transpose();
}

/// Normalized root system with a multiplicity per root.
///
/// Invariants checked at construction: <a,a> = 2 for every root, the root set
/// is mapped onto itself by every root reflection, multiplicities are >= 0.
/// G-invariance of the multiplicity is checked once the group is known
/// (see ReflectionGeometry).
template <typename Scalar>
class RootSystem {
 public:
  using Vector = VectorX<Scalar>;

  RootSystem(std::vector<Vector> roots, std::vector<Scalar> multiplicity, Scalar tol = Scalar(1e-9))
      : roots_(std::move(roots)), kappa_(std::move(multiplicity)), tol_(tol)
  {
    if (roots_.empty()) throw InvalidRootSystem("root system must be nonempty");
    if (roots_.size() != kappa_.size())
      throw InvalidRootSystem("one multiplicity per root is required");
    dim_ = static_cast<int>(roots_.front().size());
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      const auto& a = roots_[i];
      if (a.size() != dim_) throw InvalidRootSystem("roots must share one ambient dimension");
      if (std::abs(a.squaredNorm() - Scalar(2)) > tol_)
        throw InvalidRootSystem("root " + std::to_string(i) + " is not normalized to <a,a> = 2");
      if (kappa_[i] < Scalar(0)) throw InvalidRootSystem("multiplicities must be nonnegative");
    }
    for (const auto& a : roots_)
      for (const auto& b : roots_)
        if (!find(reflect(a, b))) throw InvalidRootSystem("root set is not closed under its reflections");

    // Positive subsystem: roots with <a, v> > 0 for a generic direction v.
    Vector v(dim_);
    for (int i = 0; i < dim_; ++i) v(i) = std::pow(Scalar(10), Scalar(-i)) * (Scalar(1) + Scalar(i) * Scalar(0.0137));
    for (std::size_t i = 0; i < roots_.size(); ++i)
      if (roots_[i].dot(v) > 0) positive_.push_back(i);
  }

  int dim() const { return dim_; }
  std::size_t size() const { return roots_.size(); }
  const std::vector<Vector>& roots() const { return roots_; }
  const Vector& root(std::size_t i) const { return roots_[i]; }
  Scalar multiplicity(std::size_t i) const { return kappa_[i]; }
  const std::vector<Scalar>& multiplicities() const { return kappa_; }
  /// Indices of one root from each pair {a, -a}.
  const std::vector<std::size_t>& positive_indices() const { return positive_; }
  Scalar tolerance() const { return tol_; }

  /// Index of the root equal to `a` within tolerance.
  std::optional<std::size_t> find(const Vector& a) const
  {
    for (std::size_t i = 0; i < roots_.size(); ++i)
      if ((roots_[i] - a).norm() <= tol_) return i;
    return std::nullopt;
  }

  bool multiplicity_vanishes() const
  {
    return std::all_of(kappa_.begin(), kappa_.end(), [](Scalar k) { return k == Scalar(0); });
  }

 private:
  std::vector<Vector> roots_;
  std::vector<Scalar> kappa_;
  std::vector<std::size_t> positive_;
  Scalar tol_;
  int dim_ = 0;
};

using RootSystemd = RootSystem<double>;

/// gamma_kappa (sum of multiplicities over all roots) and the homogeneous
/// dimension N + gamma_kappa.
template <typename Scalar>
struct DerivedConstants {
  Scalar gamma_kappa;
  Scalar homogeneous_dim;
};

template <typename Scalar>
DerivedConstants<Scalar> homogeneous_dimension(const RootSystem<Scalar>& R)
{
  Scalar gamma(0);
  for (Scalar k : R.multiplicities()) gamma += k;
  return {gamma, Scalar(R.dim()) + gamma};
}

/// h_kappa(x) = prod over roots of |<a, x>|^kappa(a).
template <typename Scalar, typename Derived>
Scalar weight(const RootSystem<Scalar>& R, const Eigen::MatrixBase<Derived>& x)
{
  Scalar h(1);
  for (std::size_t i = 0; i < R.size(); ++i) {
    const Scalar k = R.multiplicity(i);
    if (k == Scalar(0)) continue;
    h *= std::pow(std::abs(R.root(i).dot(x)), k);
  }
  return h;
}

/// Finite group of orthogonal matrices generated by the root reflections.
/// Elements are sorted lexicographically by their entries (row-major).
template <typename Scalar>
class GroupTable {
 public:
  using Mat = MatrixX<Scalar>;

  GroupTable(std::vector<Mat> elements, std::size_t identity)
      : elements_(std::move(elements)), identity_(identity)
  {
  }

  std::size_t size() const { return elements_.size(); }
  const Mat& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Mat>& elements() const { return elements_; }
  std::size_t identity_index() const { return identity_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  std::vector<Mat> elements_;
  std::size_t identity_;
};

using GroupTabled = GroupTable<double>;

namespace detail {

template <typename Scalar>
bool matrix_less(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b, Scalar tol)
{
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j) - tol) return true;
      if (a(i, j) > b(i, j) + tol) return false;
    }
  return false;
}

}  // namespace detail

/// Closure of the root reflections under composition (breadth first).
/// Throws ClosureOverflow once more than `cap` elements are generated.
template <typename Scalar>
GroupTable<Scalar> build_group(const RootSystem<Scalar>& R, std::size_t cap = 10000)
{
  using Mat = MatrixX<Scalar>;
  const Scalar tol = R.tolerance();
  const auto n = R.dim();

  std::vector<Mat> gens;
  for (std::size_t i : R.positive_indices()) gens.push_back(reflection_matrix(R.root(i)));

  std::vector<Mat> found{Mat::Identity(n, n)};
  std::deque<std::size_t> frontier{0};
  auto known = [&](const Mat& m) {
    return std::any_of(found.begin(), found.end(), [&](const Mat& e) { return (e - m).cwiseAbs().maxCoeff() <= tol; });
  };
  while (!frontier.empty()) {
    const Mat current = found[frontier.front()];
    frontier.pop_front();
    for (const auto& g : gens) {
      Mat next = g * current;
      if (known(next)) continue;
      found.push_back(std::move(next));
      if (found.size() > cap)
        throw ClosureOverflow("reflection group exceeds " + std::to_string(cap) + " elements");
      frontier.push_back(found.size() - 1);
    }
  }
  std::sort(found.begin(), found.end(), [&](const Mat& a, const Mat& b) { return detail::matrix_less(a, b, tol); });
  std::size_t id = 0;
  for (std::size_t i = 0; i < found.size(); ++i)
    if ((found[i] - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= tol) id = i;
  return GroupTable<Scalar>(std::move(found), id);
}

/// G-orbit of x, deduplicated within `tol` in Euclidean norm, in group order.
template <typename Scalar, typename Derived>
std::vector<VectorX<Scalar>> orbit(const GroupTable<Scalar>& G, const Eigen::MatrixBase<Derived>& x,
                                   Scalar tol = Scalar(1e-9))
{
  std::vector<VectorX<Scalar>> pts;
  for (const auto& g : G) {
    VectorX<Scalar> y = g * x;
    const bool seen = std::any_of(pts.begin(), pts.end(), [&](const VectorX<Scalar>& p) { return (p - y).norm() <= tol; });
    if (!seen) pts.push_back(std::move(y));
  }
  return pts;
}

/// d(x, y) = min over the group of |x - g y|.
template <typename Scalar, typename DerivedX, typename DerivedY>
Scalar dunkl_metric(const GroupTable<Scalar>& G, const Eigen::MatrixBase<DerivedX>& x,
                    const Eigen::MatrixBase<DerivedY>& y)
{
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (const auto& g : G) best = std::min(best, (x - g * y).norm());
  return best;
}

/// Root system, its group, and derived constants in one immutable bundle.
template <typename Scalar>
class ReflectionGeometry {
 public:
  explicit ReflectionGeometry(RootSystem<Scalar> roots, std::size_t cap = 10000)
      : roots_(std::move(roots)), group_(build_group(roots_, cap)), constants_(homogeneous_dimension(roots_))
  {
    for (const auto& g : group_)
      for (std::size_t i = 0; i < roots_.size(); ++i) {
        const auto j = roots_.find(g * roots_.root(i));
        if (!j) throw InvalidRootSystem("group element does not preserve the root set");
        if (std::abs(roots_.multiplicity(*j) - roots_.multiplicity(i)) > roots_.tolerance())
          throw InvalidRootSystem("multiplicity is not invariant under the reflection group");
      }
    detect_sign_group();
  }

  int dim() const { return roots_.dim(); }
  const RootSystem<Scalar>& roots() const { return roots_; }
  const GroupTable<Scalar>& group() const { return group_; }
  Scalar gamma() const { return constants_.gamma_kappa; }
  Scalar homogeneous_dim() const { return constants_.homogeneous_dim; }
  const DerivedConstants<Scalar>& constants() const { return constants_; }

  /// True when the roots are exactly {+-sqrt2 e_i} for a subset of axes, i.e.
  /// G is a product of rank-one groups and all heat/Riesz machinery applies.
  bool is_sign_group() const { return sign_group_; }
  /// Per-axis rank-one parameter k_i (0 for axes without a root). Only
  /// meaningful when is_sign_group().
  const std::vector<Scalar>& axis_multiplicities() const { return axis_k_; }
  bool trivial_multiplicity() const { return roots_.multiplicity_vanishes(); }

  template <typename Derived>
  Scalar weight(const Eigen::MatrixBase<Derived>& x) const { return dunkl::weight(roots_, x); }
  template <typename DX, typename DY>
  Scalar metric(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) const
  {
    return dunkl_metric(group_, x, y);
  }
  template <typename Derived>
  std::vector<VectorX<Scalar>> orbit_of(const Eigen::MatrixBase<Derived>& x, Scalar tol = Scalar(1e-9)) const
  {
    return orbit(group_, x, tol);
  }

 private:
  void detect_sign_group()
  {
    const int n = roots_.dim();
    axis_k_.assign(static_cast<std::size_t>(n), Scalar(0));
    sign_group_ = true;
    const Scalar s2 = std::sqrt(Scalar(2));
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      const auto& a = roots_.root(i);
      Eigen::Index axis = 0;
      a.cwiseAbs().maxCoeff(&axis);
      if (std::abs(std::abs(a(axis)) - s2) > roots_.tolerance()) {
        sign_group_ = false;
        return;
      }
      axis_k_[static_cast<std::size_t>(axis)] = roots_.multiplicity(i);
    }
  }

  RootSystem<Scalar> roots_;
  GroupTable<Scalar> group_;
  DerivedConstants<Scalar> constants_;
  std::vector<Scalar> axis_k_;
  bool sign_group_ = false;
};

using Geometry = ReflectionGeometry<double>;

/// Rank-one system {+-sqrt2} with multiplicity k on both roots.
template <typename Scalar = double>
RootSystem<Scalar> rank_one_roots(Scalar k)
{
  const Scalar s2 = std::sqrt(Scalar(2));
  VectorX<Scalar> a(1);
  a(0) = s2;
  return RootSystem<Scalar>({a, VectorX<Scalar>(-a)}, {k, k});
}

/// Z_2^d sign-change system: roots +-sqrt2 e_i with multiplicity k_i.
template <typename Scalar = double>
RootSystem<Scalar> product_roots(const std::vector<Scalar>& k)
{
  const auto n = static_cast<Eigen::Index>(k.size());
  const Scalar s2 = std::sqrt(Scalar(2));
  std::vector<VectorX<Scalar>> roots;
  std::vector<Scalar> mult;
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorX<Scalar> a = VectorX<Scalar>::Zero(n);
    a(i) = s2;
    roots.push_back(a);
    roots.push_back(-a);
    mult.push_back(k[static_cast<std::size_t>(i)]);
    mult.push_back(k[static_cast<std::size_t>(i)]);
  }
  return RootSystem<Scalar>(std::move(roots), std::move(mult));
}

/// Dihedral system I_2(m) in the plane: 2m roots at angles j*pi/m. For even m
/// the two root orbits carry k_even (even j) and k_odd (odd j).
template <typename Scalar = double>
RootSystem<Scalar> dihedral_roots(int m, Scalar k_even, Scalar k_odd)
{
  if (m < 2) throw InvalidRootSystem("dihedral order must be at least 2");
  const Scalar s2 = std::sqrt(Scalar(2));
  std::vector<VectorX<Scalar>> roots;
  std::vector<Scalar> mult;
  for (int j = 0; j < 2 * m; ++j) {
    const Scalar th = Scalar(j) * std::numbers::pi_v<Scalar> / Scalar(m);
    VectorX<Scalar> a(2);
    a << s2 * std::cos(th), s2 * std::sin(th);
    roots.push_back(a);
    mult.push_back((m % 2 == 1 || j % 2 == 0) ? k_even : k_odd);
  }
  return RootSystem<Scalar>(std::move(roots), std::move(mult));
}

}  // namespace dunkl

#endif
