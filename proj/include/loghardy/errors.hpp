#pragma once

#include <stdexcept>
#include <string>

namespace loghardy {

  // argument outside the domain of a function (log of a non-positive value, x below a threshold, ...)
  struct DomainError : std::domain_error {
      using std::domain_error::domain_error;
  };

  // a value that cannot be represented in double precision
  struct OverflowError : std::overflow_error {
      using std::overflow_error::overflow_error;
  };

  // iterated exp/log depth beyond what double precision supports
  struct DepthError : std::invalid_argument {
      using std::invalid_argument::invalid_argument;
  };

  struct QuadratureError : std::runtime_error {
      double abscissa; // offending point, NaN when not applicable
      QuadratureError(std::string const & what, double x)
        : std::runtime_error(what), abscissa(x) {}
  };

  // invalid run configuration (CLI layer)
  struct ConfigError : std::invalid_argument {
      using std::invalid_argument::invalid_argument;
  };

} // namespace loghardy
