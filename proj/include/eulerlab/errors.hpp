#ifndef EULERLAB_ERRORS_HPP
#define EULERLAB_ERRORS_HPP

#include <array>
#include <stdexcept>
#include <string>

namespace eulerlab {

/// Base class of every exception thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parameter or opaque function referenced during evaluation has no binding.
struct UnboundSymbolError : Error {
  using Error::Error;
};

/// An opaque function was asked for a derivative order beyond what its
/// binding declares.  Never silently zero.
struct UnboundDerivativeError : Error {
  using Error::Error;
};

/// A documented operation precondition was violated (orbit eligibility,
/// mismatched fixed parts, degenerate coefficients, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// Schema-level parameter problem (unknown name, out of range, bad spec).
struct ParamError : Error {
  using Error::Error;
};

/// Catalog or generator id not registered.
struct UnknownIdError : Error {
  using Error::Error;
};

/// Evaluation produced NaN/Inf at a point the sample plan accepted.
struct SingularEvalError : Error {
  SingularEvalError(const std::string& what, std::array<double, 3> point)
      : Error(what), point(point) {}
  std::array<double, 3> point{};  // (x, y, t)
};

/// Requested time step exceeds the advective CFL bound; the step is refused.
struct CflError : Error {
  using Error::Error;
};

/// A simulation field stopped being finite.
struct NanError : Error {
  using Error::Error;
};

/// File format / filesystem problem in dumps and traces.
struct IoError : Error {
  using Error::Error;
};

}  // namespace eulerlab

#endif
