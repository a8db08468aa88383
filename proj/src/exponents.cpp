#include "dunkl/exponents.hpp"

#include <cmath>
#include <cstdlib>

namespace dunkl {

Rational Rational::parse(const std::string& text)
{
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + text + "'"); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return fail();
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Rational n = parse(s.substr(0, slash)), d = parse(s.substr(slash + 1));
    if (d.num() == 0) return fail();
    return n / d;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::int64_t num = 0, den = 1;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.' && !dot) {
      dot = true;
      continue;
    }
    if (c < '0' || c > '9') return fail();
    digits = true;
    if (num > (INT64_MAX - 9) / 10 || (dot && den > INT64_MAX / 10)) return fail();
    num = num * 10 + (c - '0');
    if (dot) den *= 10;
  }
  if (!digits) return fail();
  return {neg ? -num : num, den};
}

Rational Rational::approximate(double x, std::int64_t max_den)
{
  if (!std::isfinite(x)) throw std::invalid_argument("cannot approximate a non-finite value");
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    const std::int64_t h2 = ai * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(r - a) < 1e-15 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) < 1e-15) break;
    r = 1.0 / (r - a);
  }
  return {h1, k1};
}

std::string Rational::str() const
{
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Exponents make_exponents(Rational alpha, Rational p, Rational hom_dim, int dim)
{
  if (!(alpha > Rational(0) && alpha < Rational(dim)))
    throw ExponentViolation("alpha = " + alpha.str() + " must lie in (0, " + std::to_string(dim) + ")");
  const Rational upper = hom_dim / alpha;
  if (!(p > Rational(1) && p < upper))
    throw ExponentViolation("p = " + p.str() + " must lie in (1, " + upper.str() + ")");
  const Rational inv_q = Rational(1) / p - alpha / hom_dim;
  return {alpha, p, Rational(1) / inv_q, hom_dim, dim};
}

}  // namespace dunkl
