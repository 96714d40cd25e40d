#pragma once

#include <stdexcept>
#include <string>

namespace agan {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched vector/matrix shapes.
struct DimensionError : Error {
  using Error::Error;
};

// An intermediate quantity left the representable range; usually signals an
// alpha/decision combination outside the numerically stable regime.
struct NumericOverflowError : Error {
  using Error::Error;
};

// The requested Renyi order is outside the domain of the operation.
struct UnsupportedOrderError : Error {
  using Error::Error;
};

// A finite GAN instance that violates its construction invariants.
struct InvalidInstanceError : Error {
  using Error::Error;
};

// backward() called with shapes that disagree with the cached forward pass.
struct StaleCacheError : Error {
  using Error::Error;
};

// Malformed file: bad magic, truncated payload, unparseable config.
struct FormatError : Error {
  using Error::Error;
};

// Training produced a non-finite loss; carries epoch and alpha in the message.
struct TrainingDivergenceError : Error {
  TrainingDivergenceError(const std::string& what, int epoch, double alpha)
      : Error(what), epoch(epoch), alpha(alpha) {}
  int epoch;
  double alpha;
};

}  // namespace agan
