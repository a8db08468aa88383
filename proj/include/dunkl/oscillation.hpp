#ifndef DUNKL_OSCILLATION_HPP
#define DUNKL_OSCILLATION_HPP

#include "dunkl/field.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/measure.hpp"
#include "dunkl/report.hpp"

#include <string>
#include <vector>

namespace dunkl {

enum class BallConstraint { All, ContainsOrigin, OrbitBalls };

const char* to_string(BallConstraint c);

/// Finite family of balls: radii 2^k and centres on the lattice (r/2) Z^N.
/// OrbitBalls marks every member as an orbit ball O(B(c, r)).
struct BallFamily {
  std::vector<BallSpec> balls;
  BallConstraint constraint = BallConstraint::All;

  /// Centres in `domain`, k in [k_min, k_max]. Levels whose lattice would hold
  /// more than `max_centres` points use the coarsest power-of-two multiple of
  /// the spacing that fits.
  static BallFamily dyadic(const Box& domain, int k_min, int k_max, BallConstraint c = BallConstraint::All,
                           std::size_t max_centres = 20000);
  /// Lattice balls that contain x, k in [k_min, k_max].
  static BallFamily around(const Geometry& geo, const Point& x, int k_min = -6, int k_max = 6,
                           BallConstraint c = BallConstraint::All);

  /// Members whose ball (orbit ball for OrbitBalls) contains x.
  BallFamily containing(const Geometry& geo, const Point& x) const;

  bool empty() const { return balls.empty(); }
  std::size_t size() const { return balls.size(); }
};

bool ball_contains(const Geometry& geo, const BallSpec& b, const Point& x);

struct OscillationOptions {
  double rel_tol = 1e-8;
  /// Balls with omega(B) below this are skipped.
  double min_measure = 1e-14;
  int max_intervals = 4000;
};

/// omega(B) for Euclidean or orbit balls, closed form in rank one.
double ball_omega(const Geometry& geo, const BallSpec& b, const OscillationOptions& opt = {});

/// int_B g d omega, clipped to the field's support.
double ball_integral(const Geometry& geo, const ScalarField& f, const BallSpec& b, const OscillationOptions& opt = {});
double ball_mean(const Geometry& geo, const ScalarField& f, const BallSpec& b, const OscillationOptions& opt = {});

/// Sup over the members containing x of the mean of |f|. Throws EmptyFamily
/// when no member contains x.
double hl_maximal(const Geometry& geo, const ScalarField& f, const Point& x, const BallFamily& family,
                  const OscillationOptions& opt = {});
/// Sup of omega(B)^{beta/N} mean_B |f|; BetaOutOfRange unless 0 < beta < hom_dim.
double fractional_maximal(const Geometry& geo, const ScalarField& f, const Point& x, double beta,
                          const BallFamily& family, const OscillationOptions& opt = {});
/// Sup of mean_B |f - f_B|.
double sharp_maximal(const Geometry& geo, const ScalarField& f, const Point& x, const BallFamily& family,
                     const OscillationOptions& opt = {});

struct OscillationStats {
  double measure = 0.0;
  double mean = 0.0;
  double mean_abs_dev = 0.0;  // mean_B |b - b_B|
  double p_mean_dev = 0.0;    // (mean_B |b - b_B|^p)^{1/p}
};

OscillationStats oscillation_stats(const Geometry& geo, const ScalarField& b, const BallSpec& ball, double p = 1.0,
                                   const OscillationOptions& opt = {});
/// mean_B |b - b_B|.
double oscillation(const Geometry& geo, const ScalarField& b, const BallSpec& ball, const OscillationOptions& opt = {});

enum class BmoVariant {
  Dunkl,        // Euclidean balls
  Central,      // Euclidean balls containing the origin
  DunklMetric,  // orbit balls
};

const char* to_string(BmoVariant v);

struct BmoResult {
  double sup = 0.0;
  BallSpec argsup;
  std::size_t ball_count = 0;
  std::size_t skipped = 0;
};

/// Sup of the p-mean oscillation over the family viewed through `variant`.
/// Throws EmptyFamily when no admissible ball remains.
BmoResult bmo_scan(const Geometry& geo, const ScalarField& b, BmoVariant variant, const BallFamily& family,
                   double p = 1.0, const OscillationOptions& opt = {});
double bmo_norm(const Geometry& geo, const ScalarField& b, BmoVariant variant, const BallFamily& family,
                const OscillationOptions& opt = {});

struct PMeanEquivalence {
  double sup_one = 0.0;
  double sup_p = 0.0;
  /// sup_p / sup_one, 1 when both vanish.
  double ratio = 1.0;
};

PMeanEquivalence bmo_pmean_equivalence(const Geometry& geo, const ScalarField& b, double p, BmoVariant variant,
                                       const BallFamily& family, const OscillationOptions& opt = {});

/// Smallest m with omega{b > m} <= omega(B)/2 and omega{b < m} <= omega(B)/2,
/// by 60 bisection steps on the level-set measure.
double median(const Geometry& geo, const ScalarField& b, const BallSpec& ball, const OscillationOptions& opt = {});

struct MedianSplit {
  double above = 0.0;  // omega{b > m} / omega(B)
  double below = 0.0;  // omega{b < m} / omega(B)
};

MedianSplit median_split(const Geometry& geo, const ScalarField& b, const BallSpec& ball, double m,
                         const OscillationOptions& opt = {});

enum class LevelSide { Below, AtLeast };

/// Rank one: the set {y in ball : b(y) < m} (Below) or {b(y) >= m} (AtLeast)
/// as sorted disjoint intervals.
std::vector<Interval> level_intervals(const Geometry& geo, const ScalarField& b, const BallSpec& ball, double m,
                                      LevelSide side);

struct VmoSweep {
  std::vector<double> small_radii{0.5, 0.25, 0.125, 0.0625, 0.03125};
  std::vector<double> large_radii{2.0, 4.0, 8.0, 16.0, 32.0};
  std::vector<double> far_distances{4.0, 8.0, 16.0, 32.0, 64.0};
  double far_radius = 1.0;
  Box domain;
  std::size_t max_centres = 4096;
};

/// Three curves with columns parameter, sup_oscillation, ball_count: small
/// radii, large radii, and balls of radius far_radius at growing distance.
struct VmoReport {
  Table small_r;
  Table large_r;
  Table far;
};

VmoReport vmo_diagnostics(const Geometry& geo, const ScalarField& b, BmoVariant variant, const VmoSweep& sweep,
                          const OscillationOptions& opt = {});

}  // namespace dunkl

#endif
