#pragma once

#include <cstddef>
#include <vector>

namespace agan {

// Probability vector over a finite alphabet. Entries are nonnegative and sum
// to 1 within 1e-12.
class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<double> probs);

  // Rescales a nonnegative mass vector so it sums to 1.
  static FiniteDistribution normalized(std::vector<double> mass);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Per-sample discriminator outputs D(x), clamped into [delta, 1-delta] at
// construction so downstream logs and negative powers stay finite.
class SoftDecision {
 public:
  static constexpr double kDefaultClamp = 1e-7;

  explicit SoftDecision(std::vector<double> values,
                        double clamp = kDefaultClamp);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  double clamp() const { return clamp_; }

 private:
  std::vector<double> values_;
  double clamp_;
};

// Per-sample real/generated probability pairs (P_r(x), P_g(x)). The
// fractional chances P_r/(P_r+P_g) are the true posterior of the sample
// source given x.
class PairedSampleWeights {
 public:
  PairedSampleWeights(std::vector<double> pr, std::vector<double> pg);

  std::size_t size() const { return pr_.size(); }
  double pr(std::size_t i) const { return pr_[i]; }
  double pg(std::size_t i) const { return pg_[i]; }

  // P_r(x) / (P_r(x) + P_g(x))
  double real_chance(std::size_t i) const { return pr_[i] / (pr_[i] + pg_[i]); }
  // P_g(x) / (P_r(x) + P_g(x))
  double fake_chance(std::size_t i) const { return pg_[i] / (pr_[i] + pg_[i]); }

 private:
  std::vector<double> pr_;
  std::vector<double> pg_;
};

}  // namespace agan
