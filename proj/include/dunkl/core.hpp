#ifndef DUNKL_CORE_HPP
#define DUNKL_CORE_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace dunkl {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point = VectorX<double>;
using Matrix = MatrixX<double>;

/// Builds a point from a brace list, e.g. `make_point({1.0, 2.0})`.
inline Point make_point(std::initializer_list<double> coords)
{
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

inline Point make_point1(double x)
{
  Point p(1);
  p(0) = x;
  return p;
}

// Error hierarchy. Every error the library raises derives from Error so the
// harness can turn it into a failed check instead of a crash.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define DUNKL_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                             \
   public:                                                                \
    using Error::Error;                                                   \
    const char* kind() const noexcept override { return #Name; }          \
  };

DUNKL_DEFINE_ERROR(InvalidRootSystem)
DUNKL_DEFINE_ERROR(ClosureOverflow)
DUNKL_DEFINE_ERROR(NoConvergence)
DUNKL_DEFINE_ERROR(UnsupportedGroup)
DUNKL_DEFINE_ERROR(SeriesDivergenceGuard)
DUNKL_DEFINE_ERROR(RouteDisagreement)
DUNKL_DEFINE_ERROR(RejectedSample)
DUNKL_DEFINE_ERROR(SingularPair)
DUNKL_DEFINE_ERROR(ExponentViolation)
DUNKL_DEFINE_ERROR(EmptyFamily)
DUNKL_DEFINE_ERROR(BetaOutOfRange)
DUNKL_DEFINE_ERROR(DegenerateSplit)
DUNKL_DEFINE_ERROR(ConfigError)

#undef DUNKL_DEFINE_ERROR

}  // namespace dunkl

#endif
