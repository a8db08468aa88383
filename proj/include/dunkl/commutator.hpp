#ifndef DUNKL_COMMUTATOR_HPP
#define DUNKL_COMMUTATOR_HPP

#include "dunkl/exponents.hpp"
#include "dunkl/oscillation.hpp"
#include "dunkl/riesz.hpp"
#include "dunkl/tabulate.hpp"

#include <optional>
#include <vector>

namespace dunkl {

/// [b, R] f (x) = int R(x, y) (b(x) - b(y)) f(y) d omega(y). Exactly 0 for
/// constant b.
RieszApplyResult commutator_apply_at(const RieszKernel& K, const ScalarField& b, const ScalarField& f, const Point& x,
                                     const RieszApplyOptions& opt = {});
/// b(x) R f(x) - R(b f)(x), evaluated as two separate transforms.
double commutator_definitional_at(const RieszKernel& K, const ScalarField& b, const ScalarField& f, const Point& x,
                                  const RieszApplyOptions& opt = {});
ScalarField commutator_apply(const RieszKernel& K, const ScalarField& b, const ScalarField& f,
                             const RieszApplyOptions& opt = {});

struct ProfileOptions {
  RieszApplyOptions apply{1e-9, 1e-4};
  /// Tabulated range [-reach M, reach M], M the support radius of f.
  double reach = 64.0;
  int nodes = 16;
  int levels = 6;
  double rel_tol = 1e-8;
};

/// Rank-one function g tabulated on graded panels, continued beyond the
/// table by |g(+-L)| (L/|x|)^{N - alpha}.
class Profile {
 public:
  Profile() = default;
  Profile(PanelTable table, double k, double alpha, double rel_tol);

  double operator()(double x) const;
  double outer() const { return table_.hi(); }
  const PanelTable& table() const { return table_; }
  bool vanishes() const { return zero_; }
  static Profile zero(double outer);

  /// int_{|x| > R} |g|^q d omega, tail included.
  double tail_energy(double q, double R = 0.0) const;
  double lq_norm(double q) const { return std::pow(tail_energy(q), 1.0 / q); }
  /// int_{[-L, L]} |g(x) - g_{B(x, r)}|^q d omega(x).
  double deviation_energy(double q, double r) const;
  /// Mean of g over B(x, r) against omega.
  double ball_mean(double x, double r) const;
  ScalarField field() const;

 private:
  PanelTable table_;
  double k_ = 0.0;
  double alpha_ = 1.0;
  double rel_tol_ = 1e-8;
  bool zero_ = false;
};

Profile commutator_profile(const RieszKernel& K, const ScalarField& b, const ScalarField& f,
                           const ProfileOptions& opt = {});
Profile riesz_profile(const RieszKernel& K, const ScalarField& f, const ProfileOptions& opt = {});

struct NormEstimate {
  double estimate = 0.0;  // max ratio
  std::vector<double> ratios;
  std::size_t skipped = 0;  // members with ||f||_p = 0
};

/// max over the family of ||[b, R] f||_q / ||f||_p (rank one).
NormEstimate commutator_norm_estimate(const RieszKernel& K, const ScalarField& b, const std::vector<ScalarField>& family,
                                      const Exponents& e, const ProfileOptions& opt = {});

struct UpperBoundOptions {
  /// Defaults to (1 + p) / 2.
  std::optional<double> s;
  int k_min = -4;
  int k_max = 3;
  /// Domain and radii of the family for ||b||_{BMO_d}.
  Box bmo_domain{make_point1(-8.0), make_point1(8.0)};
  int bmo_k_min = -4;
  int bmo_k_max = 3;
  ProfileOptions profile;
  /// Node count of the refined run used for the stability comparison.
  int refined_nodes = 24;
};

/// Sharp-maximal inequality at the samples:
/// ([b,R]f)^#(x) against ||b||_{BMO_d} ((M|Rf|^s)^{1/s} + (M^{alpha s}|f|^s)^{1/s}).
VerificationReport upper_bound_experiment(const RieszKernel& K, const ScalarField& b, const ScalarField& f,
                                          const Exponents& e, const std::vector<Point>& samples,
                                          const UpperBoundOptions& opt = {});

struct LowerBoundOptions {
  /// Indicators are mollified at radius / mollify_ratio.
  double mollify_ratio = 100.0;
  int sign_samples = 41;
  ProfileOptions profile;
};

/// Median split of B(x0 + 5 r e_j, r), test functions on the two sides and
/// the chain Omega(b, B0) <= C r^{-alpha} omega(B0)^{1/p - 1/q} sum_i ||[b,R] f_i||_q / ||f_i||_p
/// with C reported. Throws DegenerateSplit if a side has measure below a
/// quarter of the ball.
VerificationReport lower_bound_experiment(const RieszKernel& K, const ScalarField& b, const Exponents& e,
                                          const BallSpec& B0, const LowerBoundOptions& opt = {});

/// Sum over the intervals of S((y - a)/w) S((b - y)/w), S the C^1 smoothstep.
ScalarField mollified_indicator(const std::vector<Interval>& intervals, double w);

struct ProbeOptions {
  /// Radii R of the tail curve, relative to the support radius of f.
  std::vector<double> tail_radii{2.0, 4.0, 8.0, 16.0, 32.0};
  /// Radii r of the small-ball curve, relative to the support radius of f.
  std::vector<double> small_radii{0.5, 0.25, 0.125, 0.0625, 0.03125};
  /// Assert decay (Lipschitz compactly supported symbols); otherwise the
  /// curves are reported only.
  bool expect_decay = true;
  double exponent_tolerance = 0.25;
  double monotone_slack = 0.05;
  ProfileOptions profile;
};

struct ProbeReport {
  /// member, R, tail_energy, tail_norm
  Table tail;
  /// member, r, deviation_energy, deviation_norm
  Table small_ball;
  VerificationReport report;
};

ProbeReport compactness_probe(const RieszKernel& K, const ScalarField& b, const std::vector<ScalarField>& family,
                              const Exponents& e, const ProbeOptions& opt = {});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dunkl

#endif
