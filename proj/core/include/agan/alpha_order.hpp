#pragma once

#include <cmath>

namespace agan {

enum class AlphaRegime { Zero, NearOne, Finite, Infinite };

// Validated Renyi order alpha in [0, +inf].
//
// The regime is derived from the value at construction:
//   Zero      iff value == 0
//   NearOne   iff |value - 1| < 1e-6 (the alpha/(alpha-1) prefactor is
//             singular at 1; inside the window the Shannon limit is used)
//   Infinite  iff value >= 1e8 (the exponent (alpha-1)/alpha is 1 to machine
//             precision beyond that) or value is +inf
//   Finite    otherwise
class AlphaOrder {
 public:
  static constexpr double kNearOneWindow = 1e-6;
  static constexpr double kInfiniteThreshold = 1e8;

  explicit AlphaOrder(double value);

  static AlphaOrder infinite();

  double value() const { return value_; }
  AlphaRegime regime() const { return regime_; }

  bool is_zero() const { return regime_ == AlphaRegime::Zero; }
  bool is_near_one() const { return regime_ == AlphaRegime::NearOne; }
  bool is_finite_general() const { return regime_ == AlphaRegime::Finite; }
  bool is_infinite() const { return regime_ == AlphaRegime::Infinite; }

  // (alpha - 1) / alpha, the power-mean order used throughout. Only
  // meaningful for the Finite regime.
  double power_mean_order() const { return (value_ - 1.0) / value_; }

  // alpha / (alpha - 1), the prefactor of the general formula.
  double log_prefactor() const { return value_ / (value_ - 1.0); }

 private:
  double value_;
  AlphaRegime regime_;
};

}  // namespace agan
