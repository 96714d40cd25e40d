#include "agan/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "agan/errors.hpp"

namespace agan {

namespace {
constexpr double kSumTolerance = 1e-12;
}

FiniteDistribution::FiniteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw DimensionError("distribution over an empty alphabet");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) {
      throw InvalidInstanceError("distribution entry is negative or NaN");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kSumTolerance) {
    throw InvalidInstanceError("distribution entries do not sum to 1");
  }
}

FiniteDistribution FiniteDistribution::normalized(std::vector<double> mass) {
  double sum = std::accumulate(mass.begin(), mass.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw InvalidInstanceError("mass vector has no positive finite total");
  }
  for (double& m : mass) m /= sum;
  // Guard against residual rounding in the sum.
  double resum = std::accumulate(mass.begin(), mass.end(), 0.0);
  mass.back() += 1.0 - resum;
  if (mass.back() < 0.0) mass.back() = 0.0;
  return FiniteDistribution(std::move(mass));
}

SoftDecision::SoftDecision(std::vector<double> values, double clamp)
    : values_(std::move(values)), clamp_(clamp) {
  if (!(clamp > 0.0) || clamp >= 0.01) {
    throw InvalidInstanceError("clamp bound must lie in (0, 0.01)");
  }
  for (double& v : values_) {
    if (std::isnan(v)) {
      throw InvalidInstanceError("soft decision is NaN");
    }
    v = std::clamp(v, clamp_, 1.0 - clamp_);
  }
}

PairedSampleWeights::PairedSampleWeights(std::vector<double> pr,
                                         std::vector<double> pg)
    : pr_(std::move(pr)), pg_(std::move(pg)) {
  if (pr_.size() != pg_.size()) {
    throw DimensionError("pr and pg weight vectors differ in length");
  }
  if (pr_.empty()) {
    throw DimensionError("empty sample list");
  }
  for (std::size_t i = 0; i < pr_.size(); ++i) {
    if (!(pr_[i] >= 0.0) || !(pg_[i] >= 0.0)) {
      throw InvalidInstanceError("sample weight is negative or NaN");
    }
    if (!(pr_[i] + pg_[i] > 0.0)) {
      throw InvalidInstanceError("sample has zero total weight");
    }
  }
}

}  // namespace agan
