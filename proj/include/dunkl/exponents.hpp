#ifndef DUNKL_EXPONENTS_HPP
#define DUNKL_EXPONENTS_HPP

#include "dunkl/core.hpp"

#include <cstdint>
#include <numeric>
#include <string>

namespace dunkl {

/// Exact rational with 64-bit numerator and positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num_(n), den_(d) { normalize(); }

  /// Parses "3", "-1/2", "0.25" (finite decimals only).
  static Rational parse(const std::string& s);
  /// Best approximation with denominator <= max_den (continued fractions).
  static Rational approximate(double x, std::int64_t max_den = 1000000);

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend constexpr Rational operator+(Rational a, Rational b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
  friend constexpr Rational operator-(Rational a, Rational b) { return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_}; }
  friend constexpr Rational operator*(Rational a, Rational b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend constexpr Rational operator/(Rational a, Rational b)
  {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend constexpr bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend constexpr bool operator<(Rational a, Rational b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend constexpr bool operator<=(Rational a, Rational b) { return !(b < a); }
  friend constexpr bool operator>(Rational a, Rational b) { return b < a; }
  friend constexpr bool operator>=(Rational a, Rational b) { return !(a < b); }

 private:
  constexpr void normalize()
  {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// (alpha, p, q) with 1/q = 1/p - alpha/hom_dim, validated against
/// 0 < alpha < N and 1 < p < hom_dim/alpha.
struct Exponents {
  Rational alpha;
  Rational p;
  Rational q;
  Rational hom_dim;
  int dim = 1;

  double a() const { return alpha.value(); }
  double pv() const { return p.value(); }
  double qv() const { return q.value(); }
  /// Conjugate exponent p' = p / (p - 1).
  double p_conjugate() const { return (p / (p - Rational(1))).value(); }
};

/// Throws ExponentViolation when the hypotheses fail.
Exponents make_exponents(Rational alpha, Rational p, Rational hom_dim, int dim);

}  // namespace dunkl

#endif
