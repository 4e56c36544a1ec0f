#ifndef RESOLAB_ERRORS_HPP
#define RESOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace resolab {

/// Argument outside the certified domain of an operation.
class RangeError : public std::domain_error {
public:
  explicit RangeError(const std::string& msg) : std::domain_error(msg) {}
};

/// Precondition violated by the caller (names the violated assumption).
class MisuseError : public std::invalid_argument {
public:
  explicit MisuseError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Two internal routes for the same quantity disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
  explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical process failed (stiffness, rank collapse, no convergence).
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Zero count cannot be certified (zero too close to the contour).
class InconclusiveCountError : public std::runtime_error {
public:
  InconclusiveCountError(const std::string& msg, double nearest_zero_re,
                         double nearest_zero_im)
      : std::runtime_error(msg), nearest_re(nearest_zero_re), nearest_im(nearest_zero_im) {}
  double nearest_re;
  double nearest_im;
};

/// Bad configuration file or option combination.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Not enough data points for a requested fit.
class InsufficientDataError : public std::runtime_error {
public:
  explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace resolab

#endif
