#ifndef ARMAX_REACH_ERRORS_HPP_
#define ARMAX_REACH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace armax_reach {

/// Two operands carry generator columns with the same label where independent
/// sets are required (Minkowski sum precondition).
class LabelCollisionError : public std::invalid_argument {
 public:
  explicit LabelCollisionError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// SS -> ARMAX conversion failed (unobservable pair, or no gain achieving
/// nilpotency at the requested order).
class ConversionError : public std::runtime_error {
 public:
  ConversionError(const std::string& what, int minimal_feasible_p)
      : std::runtime_error(what), minimal_feasible_p(minimal_feasible_p) {}

  /// Smallest order at which the conversion would succeed; -1 when the pair
  /// is unobservable at every order up to the state dimension.
  int minimal_feasible_p;
};

/// Initial-state-set estimation failed (rank-deficient observability matrix).
class EstimationError : public std::runtime_error {
 public:
  explicit EstimationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace armax_reach

#endif  // ARMAX_REACH_ERRORS_HPP_
