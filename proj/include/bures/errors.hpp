#ifndef BURES_ERRORS_HPP
#define BURES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bures {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  /// Magnitude of the violated quantity (asymmetry, negative eigenvalue, trace
  /// deviation, ...), or 0 when not applicable.
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Inputs violate a precondition: wrong dimensions, not a state, not
/// normalized, out of range, no geodesic through the given endpoints.
class validation_error : public error {
 public:
  using error::error;
};

/// A numerical step failed or a verification gate exceeded its tolerance.
class numerical_error : public error {
 public:
  using error::error;
};

}  // namespace bures

#endif  // BURES_ERRORS_HPP
