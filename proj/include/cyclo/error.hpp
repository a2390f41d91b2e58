#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyclo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked 64-bit coefficient operation overflowed.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, std::int64_t exponent)
      : Error(what + " (overflow at exponent " + std::to_string(exponent) + ")"),
        exponent_(exponent) {}

  std::int64_t exponent() const noexcept { return exponent_; }

 private:
  std::int64_t exponent_;
};

/// A sine product was evaluated at a true pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance; carries the best estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace cyclo
