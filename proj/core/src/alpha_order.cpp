#include "agan/alpha_order.hpp"

#include <cmath>

#include "agan/errors.hpp"

namespace agan {

AlphaOrder::AlphaOrder(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0) {
    throw UnsupportedOrderError("Renyi order must be a real in [0, inf]");
  }
  if (std::isinf(value) || value >= kInfiniteThreshold) {
    regime_ = AlphaRegime::Infinite;
  } else if (value == 0.0) {
    regime_ = AlphaRegime::Zero;
  } else if (std::fabs(value - 1.0) < kNearOneWindow) {
    regime_ = AlphaRegime::NearOne;
  } else {
    regime_ = AlphaRegime::Finite;
  }
}

AlphaOrder AlphaOrder::infinite() {
  return AlphaOrder(std::numeric_limits<double>::infinity());
}

}  // namespace agan
