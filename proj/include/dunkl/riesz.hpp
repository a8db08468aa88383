#ifndef DUNKL_RIESZ_HPP
#define DUNKL_RIESZ_HPP

#include "dunkl/exponents.hpp"
#include "dunkl/field.hpp"
#include "dunkl/heat.hpp"
#include "dunkl/report.hpp"

#include <cstdint>
#include <vector>

namespace dunkl {

enum class RieszRoute {
  TimeIntegral,  // int h_t t^{(alpha-1)/2 - 1} dt in s = log t, three regimes
  Subordinated,  // rank one: t-integral done in closed form inside the Rosler integral
  Classical,     // zero multiplicity closed form
};

const char* to_string(RieszRoute r);

struct TimePlan {
  /// Regime splits sit at factor * d(x,y)^2 and factor * |x - y|^2.
  double split_factor = 1.0;
  double rel_tol = 1e-10;
  /// Integration range ends where the integrand drops below floor * peak.
  double floor = 1e-18;
};

/// R_j^alpha(x, y) = -(C_alpha / 2) (y_j - x_j) int_0^inf h_t(x, y) t^{(alpha-1)/2 - 1} dt
/// with C_alpha = 1 / Gamma((1 + alpha) / 2). `j` is zero-based.
class RieszKernel {
 public:
  RieszKernel(const HeatKernel& heat, int j, double alpha, TimePlan plan = {});

  const HeatKernel& heat() const { return *heat_; }
  const Geometry& geometry() const { return heat_->geometry(); }
  int component() const { return j_; }
  double alpha() const { return alpha_; }
  const TimePlan& plan() const { return plan_; }
  RieszRoute primary() const { return primary_; }

  /// 1 / Gamma((1 + alpha) / 2).
  double c_alpha() const;
  /// 2^{(hom_dim - alpha)/2} Gamma((hom_dim + 1 - alpha)/2) / Gamma((1 + alpha)/2).
  double d_kappa_alpha() const;
  /// K with R = K (x_j - y_j) / |x - y|^{N+1-alpha} at zero multiplicity.
  double classical_constant() const;

  double operator()(const Point& x, const Point& y) const { return value(primary_, x, y); }
  /// Throws SingularPair when d(x, y) = 0.
  double value(RieszRoute route, const Point& x, const Point& y) const;
  /// The time integral int_0^inf h_t(x, y) t^{(alpha-1)/2 - 1} dt.
  double time_integral(const Point& x, const Point& y) const;
  /// Same quantity by subordination (rank one only).
  double subordinated_integral(double x, double y) const;

 private:
  const HeatKernel* heat_;
  int j_;
  double alpha_;
  TimePlan plan_;
  RieszRoute primary_;
};

struct RieszApplyOptions {
  double rel_tol = 1e-8;
  /// Innermost shell radius relative to the outer scale.
  double shell_floor = 1e-4;
};

struct RieszApplyResult {
  double value = 0.0;
  double quad_error = 0.0;
  /// Size-estimate bound on the part of the innermost shell that is not
  /// resolved by quadrature (rank one: resolved, reported for reference).
  double floor_bound = 0.0;
};

/// R_j^alpha f(x) for f with declared support. Rank one: dyadic shells around
/// x with a Gauss-Jacobi innermost panel, cusps at -x and 0 as breakpoints.
/// Higher rank: the orbit of x is cut out at the floor radius and the
/// excluded part is covered by floor_bound.
RieszApplyResult riesz_apply_at(const RieszKernel& K, const ScalarField& f, const Point& x,
                                const RieszApplyOptions& opt = {});

ScalarField riesz_apply(const RieszKernel& K, const ScalarField& f, const RieszApplyOptions& opt = {});

struct KernelPair {
  Point x;
  Point y;
};

/// |R(x, y)| omega(B(x, d)) / d^alpha over the pairs.
RatioStats size_ratios(const RieszKernel& K, const std::vector<KernelPair>& pairs);
VerificationReport size_estimate_ratio(const RieszKernel& K, const std::vector<KernelPair>& pairs);

enum class SmoothnessMode { VaryY, VaryX };

struct KernelTriple {
  Point x;
  Point y;
  Point moved;  // y' (VaryY) or x' (VaryX)
};

/// |R(x,y) - R(x,y')| |x - y| omega(B(x,d)) / (|y - y'| d^alpha), or the
/// x-perturbed analogue. Throws RejectedSample when the perturbation exceeds
/// d(x, y) / 2.
RatioStats smoothness_ratios(const RieszKernel& K, SmoothnessMode mode, const std::vector<KernelTriple>& samples);
VerificationReport smoothness_ratio(const RieszKernel& K, SmoothnessMode mode, const std::vector<KernelTriple>& samples);

/// Pairs (x, y) in B(x0, r) x B(x0 + 5 r e_j, r), `per_axis` points per axis
/// on each ball (interior grid).
std::vector<KernelPair> lower_bound_pairs(const RieszKernel& K, const BallSpec& ball, int per_axis = 5);

/// inf of |R(x, y)| omega(B(x0, r)) / r^alpha over lower_bound_pairs and the
/// sign coherence of R on the sample.
VerificationReport kernel_lower_bound_check(const RieszKernel& K, const BallSpec& ball, int per_axis = 5);

/// Random pairs with both points in [-L, L]^N and d(x, y) >= min_d.
std::vector<KernelPair> random_pairs(int dim, int count, double L, double min_d, const Geometry& geo,
                                     std::uint64_t seed);

/// Sum of at most `max_bumps` Gaussian bumps with centers in [-4, 4]^N,
/// widths in [0.2, 2] and random signs.
ScalarField random_bump_sum(int dim, std::uint64_t seed, int max_bumps = 5);
std::vector<ScalarField> bump_family(int dim, int count, std::uint64_t seed);

struct NormOptions {
  double rel_tol = 1e-6;
  /// Outer radius of the quadrature for |R f|^q relative to the support.
  double reach = 8.0;
};

/// (int |f|^p d omega)^{1/p} over the field's support.
double lp_norm(const Geometry& geo, const ScalarField& f, double p, double rel_tol = 1e-8);

/// ||R f||_q in rank one with the |x|^{alpha - hom_dim} tail added in
/// closed form beyond the quadrature range.
double riesz_lq_norm(const RieszKernel& K, const ScalarField& f, double q, const NormOptions& opt = {});

/// max over the family of ||R f||_q / ||f||_p together with the dilation
/// comparison f_t(x) = f(t x) for every t in `dilations`.
VerificationReport lp_lq_norm_ratio(const RieszKernel& K, const std::vector<ScalarField>& family, const Exponents& e,
                                    const std::vector<double>& dilations = {0.25, 4.0}, const NormOptions& opt = {});

/// Throws ExponentViolation unless e describes K (alpha and hom_dim).
void check_exponents(const RieszKernel& K, const Exponents& e);

struct PointwiseOptions {
  int k_min = -6;
  int k_max = 6;
  RieszApplyOptions apply;
};

/// |R f(x)| against ||f||_p^{1 - p/q} (sum over the orbit of x of M f(sigma x))^{p/q},
/// M over the lattice balls of radius 2^k, k in [k_min, k_max], that contain
/// the point.
VerificationReport pointwise_maximal_bound_check(const RieszKernel& K, const ScalarField& f, const Exponents& e,
                                                 const std::vector<Point>& samples, const PointwiseOptions& opt = {});

}  // namespace dunkl

#endif
