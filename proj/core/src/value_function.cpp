#include "agan/value_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agan/errors.hpp"

namespace agan {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sum exp(t_k)) with -inf entries contributing nothing.
double log_sum_exp(const std::vector<double>& t) {
  double tmax = kNegInf;
  for (double v : t) tmax = std::max(tmax, v);
  if (!std::isfinite(tmax)) return tmax;  // all -inf, or an overflow leaked in
  double sum = 0.0;
  for (double v : t) sum += std::exp(v - tmax);
  return tmax + std::log(sum);
}

void require_same_length(const PairedSampleWeights& w, const SoftDecision& d) {
  if (w.size() != d.size()) {
    throw DimensionError("sample weights and soft decisions differ in length");
  }
}

}  // namespace

double value_function(const AlphaOrder& alpha, const PairedSampleWeights& w,
                      const SoftDecision& d) {
  require_same_length(w, d);
  const std::size_t n = w.size();

  switch (alpha.regime()) {
    case AlphaRegime::Zero: {
      double lo = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, std::min(d[i], 1.0 - d[i]));
      }
      return std::log(lo);
    }
    case AlphaRegime::NearOne: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += w.real_chance(i) * std::log(d[i]) +
               w.fake_chance(i) * std::log(1.0 - d[i]);
      }
      return acc / static_cast<double>(n);
    }
    case AlphaRegime::Infinite: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += w.real_chance(i) * d[i] + w.fake_chance(i) * (1.0 - d[i]);
      }
      return std::log(acc / static_cast<double>(n));
    }
    case AlphaRegime::Finite:
      break;
  }

  const double e = alpha.power_mean_order();
  std::vector<double> terms;
  terms.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    terms.push_back(std::log(w.real_chance(i)) + e * std::log(d[i]));
    terms.push_back(std::log(w.fake_chance(i)) + e * std::log(1.0 - d[i]));
  }
  const double log_mean = log_sum_exp(terms) - std::log(static_cast<double>(n));
  const double value = alpha.log_prefactor() * log_mean;
  if (!std::isfinite(value)) {
    throw NumericOverflowError(
        "value function left the stable range for this alpha/decision pair");
  }
  return value;
}

double renyi_conditional_cross_entropy(const AlphaOrder& alpha,
                                       const PairedSampleWeights& w,
                                       const SoftDecision& d) {
  return -value_function(alpha, w, d);
}

double arimoto_conditional_entropy(const AlphaOrder& alpha,
                                   const PairedSampleWeights& w) {
  const std::size_t n = w.size();
  switch (alpha.regime()) {
    case AlphaRegime::Zero:
      throw UnsupportedOrderError(
          "Arimoto conditional entropy is not defined at alpha = 0");
    case AlphaRegime::NearOne: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double wr = w.real_chance(i);
        const double wg = w.fake_chance(i);
        if (wr > 0.0) acc -= wr * std::log(wr);
        if (wg > 0.0) acc -= wg * std::log(wg);
      }
      return acc / static_cast<double>(n);
    }
    case AlphaRegime::Infinite: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += std::max(w.real_chance(i), w.fake_chance(i));
      }
      return -std::log(acc / static_cast<double>(n));
    }
    case AlphaRegime::Finite:
      break;
  }

  const double a = alpha.value();
  std::vector<double> per_sample;
  per_sample.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double wr = w.real_chance(i);
    const double wg = w.fake_chance(i);
    // log( (wr^a + wg^a)^(1/a) )
    const double t = log_sum_exp({a * std::log(wr), a * std::log(wg)}) / a;
    per_sample.push_back(t);
  }
  const double log_mean =
      log_sum_exp(per_sample) - std::log(static_cast<double>(n));
  const double entropy = a / (1.0 - a) * log_mean;
  if (!std::isfinite(entropy)) {
    throw NumericOverflowError("Arimoto entropy left the stable range");
  }
  return entropy;
}

double alpha_classification_loss(const AlphaOrder& alpha,
                                 const std::vector<FiniteDistribution>& cond,
                                 const std::vector<FiniteDistribution>& pred) {
  if (alpha.is_zero()) {
    throw UnsupportedOrderError("alpha loss is not defined at alpha = 0");
  }
  if (cond.size() != pred.size() || cond.empty()) {
    throw DimensionError("cond and pred sample lists differ in length");
  }
  const std::size_t n = cond.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cond[i].size() != pred[i].size()) {
      throw DimensionError("cond and pred alphabets differ for a sample");
    }
  }

  if (alpha.is_near_one()) {
    // exp of the Shannon cross entropy, with 0 * log 0 = 0.
    double ce = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t y = 0; y < cond[i].size(); ++y) {
        if (cond[i][y] > 0.0) ce -= cond[i][y] * std::log(pred[i][y]);
      }
    }
    return std::exp(ce / static_cast<double>(n));
  }

  const double e =
      alpha.is_infinite() ? 1.0 : alpha.power_mean_order();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t y = 0; y < cond[i].size(); ++y) {
      const double p = cond[i][y];
      if (p == 0.0) continue;
      mean += p * std::exp(e * std::log(pred[i][y]));
    }
  }
  mean /= static_cast<double>(n);

  const double exponent = alpha.is_infinite() ? -1.0
                                              : alpha.value() / (1.0 - alpha.value());
  const double loss = std::exp(exponent * std::log(mean));
  if (std::isnan(loss)) {
    throw NumericOverflowError("alpha loss left the stable range");
  }
  return loss;
}

}  // namespace agan
