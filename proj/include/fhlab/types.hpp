#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fhlab {

using cplx = std::complex<double>;

// Numerical failure: an iteration or series evaluation could not reach the
// requested tolerance within its certified budget.
class NonConvergent : public std::runtime_error {
 public:
  explicit NonConvergent(const std::string& what) : std::runtime_error(what) {}
};

// An adaptive quadrature rule hit its depth cap before meeting tolerance.
class QuadratureFailure : public NonConvergent {
 public:
  explicit QuadratureFailure(const std::string& what) : NonConvergent(what) {}
};

// An iterative eigensolve hit its iteration cap.
class NoConvergence : public NonConvergent {
 public:
  explicit NoConvergence(const std::string& what) : NonConvergent(what) {}
};

// Bad user input: unknown catalog name, malformed config, invalid argument
// combination. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A section constructor was asked for headroom smaller than the truncation.
class HeadroomInsufficient : public std::logic_error {
 public:
  explicit HeadroomInsufficient(const std::string& what)
      : std::logic_error(what) {}
};

// Margin below which evaluation near the unit circle is refused for series
// whose coefficient tail only decays harmonically or geometrically.
inline constexpr double kEvalMargin = 1e-6;

}  // namespace fhlab
