#include "agan/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "agan/errors.hpp"
#include "agan/format.hpp"
#include "agan/value_function.hpp"

namespace agan {

namespace {

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  for (double& x : v) x = std::max(x - tau, 0.0);
  return v;
}

// Keeps every coordinate strictly positive so w^(alpha-1) stays finite for
// alpha < 1.
FiniteDistribution floored_distribution(std::vector<double> probs) {
  constexpr double kFloor = 1e-12;
  for (double& p : probs) p = std::max(p, kFloor);
  return FiniteDistribution::normalized(std::move(probs));
}

// Analytic gradient of optimal_value (= -Arimoto entropy of the fractional
// chances) with respect to P_g, coordinate by coordinate.
std::vector<double> optimal_value_gradient(const AlphaOrder& alpha,
                                           const FiniteDistribution& pr,
                                           const FiniteDistribution& pg) {
  const std::size_t n = pr.size();
  std::vector<double> grad(n, 0.0);

  if (alpha.is_near_one()) {
    for (std::size_t i = 0; i < n; ++i) {
      const double total = pr[i] + pg[i];
      const double w = pg[i] / total;
      grad[i] = std::log(w / (1.0 - w)) * pr[i] / (total * total) /
                static_cast<double>(n);
    }
    return grad;
  }

  const double a = alpha.value();
  const double c = alpha.log_prefactor();
  std::vector<double> t(n, 0.0);
  std::vector<double> tprime(n, 0.0);
  double t_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double total = pr[i] + pg[i];
    const double w = pg[i] / total;
    const double s = std::pow(w, a) + std::pow(1.0 - w, a);
    t[i] = std::pow(s, 1.0 / a);
    tprime[i] = std::pow(s, (1.0 - a) / a) *
                (std::pow(w, a - 1.0) - std::pow(1.0 - w, a - 1.0));
    t_sum += t[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double total = pr[i] + pg[i];
    grad[i] = c * tprime[i] * pr[i] / (total * total) / t_sum;
  }
  return grad;
}

}  // namespace

FiniteGanInstance::FiniteGanInstance(FiniteDistribution pr,
                                     FiniteDistribution pg)
    : pr_(std::move(pr)), pg_(std::move(pg)) {
  if (pr_.size() != pg_.size()) {
    throw InvalidInstanceError("pr and pg are over different alphabets");
  }
  bool any_empty_symbol = false;
  for (std::size_t i = 0; i < pr_.size(); ++i) {
    if (pr_[i] + pg_[i] == 0.0) {
      any_empty_symbol = true;
      break;
    }
  }
  if (any_empty_symbol) {
    std::vector<double> kept_r, kept_g;
    for (std::size_t i = 0; i < pr_.size(); ++i) {
      if (pr_[i] + pg_[i] > 0.0) {
        kept_r.push_back(pr_[i]);
        kept_g.push_back(pg_[i]);
      }
    }
    pr_ = FiniteDistribution(std::move(kept_r));
    pg_ = FiniteDistribution(std::move(kept_g));
  }
}

PairedSampleWeights FiniteGanInstance::weights() const {
  return PairedSampleWeights(pr_.probs(), pg_.probs());
}

SoftDecision closed_form_discriminator(const AlphaOrder& alpha,
                                       const FiniteGanInstance& inst) {
  const std::size_t n = inst.alphabet_size();
  std::vector<double> d(n, 0.5);
  if (alpha.is_zero()) {
    return SoftDecision(std::move(d));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double pr = inst.real()[i];
    const double pg = inst.generated()[i];
    if (alpha.is_infinite()) {
      d[i] = pr > pg ? 1.0 : (pr < pg ? 0.0 : 0.5);
      continue;
    }
    // 1 / (1 + (pg/pr)^a) via the log domain.
    const double log_ratio = std::log(pg) - std::log(pr);
    const double t = alpha.value() * log_ratio;
    if (t > 0.0) {
      // exp(t) may overflow; write as exp(-t) / (exp(-t) + 1).
      const double u = std::exp(-t);
      d[i] = u / (u + 1.0);
    } else {
      d[i] = 1.0 / (1.0 + std::exp(t));
    }
  }
  return SoftDecision(std::move(d));
}

GridSearchResult brute_force_max_discriminator(const AlphaOrder& alpha,
                                               const FiniteGanInstance& inst,
                                               int grid_points) {
  if (grid_points < 2) {
    throw InvalidInstanceError("grid needs at least two points");
  }
  if (grid_points > 100 && inst.alphabet_size() > 6) {
    throw InvalidInstanceError(
        "fine grids are limited to alphabets of size <= 6");
  }
  const PairedSampleWeights w = inst.weights();
  const std::size_t n = inst.alphabet_size();
  const double delta = SoftDecision::kDefaultClamp;
  const double span = (1.0 - 2.0 * delta) / static_cast<double>(grid_points - 1);

  // The objective is separable per symbol: the outer log is monotone, so for
  // alpha > 1 each bracketed term is maximized, for alpha < 1 minimized
  // (negative prefactor). The limit regimes have their own per-symbol score.
  std::vector<double> argmax(n, 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    const double wr = w.real_chance(i);
    const double wg = w.fake_chance(i);
    double best_score = -std::numeric_limits<double>::infinity();
    double best_d = delta;
    for (int j = 0; j < grid_points; ++j) {
      const double dj = delta + span * static_cast<double>(j);
      double score = 0.0;
      switch (alpha.regime()) {
        case AlphaRegime::Zero:
          score = std::min(dj, 1.0 - dj);
          break;
        case AlphaRegime::NearOne:
          score = wr * std::log(dj) + wg * std::log(1.0 - dj);
          break;
        case AlphaRegime::Infinite:
          score = wr * dj + wg * (1.0 - dj);
          break;
        case AlphaRegime::Finite: {
          const double e = alpha.power_mean_order();
          const double term = wr * std::exp(e * std::log(dj)) +
                              wg * std::exp(e * std::log(1.0 - dj));
          score = alpha.value() > 1.0 ? term : -term;
          break;
        }
      }
      if (score > best_score) {
        best_score = score;
        best_d = dj;
      }
    }
    argmax[i] = best_d;
  }

  GridSearchResult result{SoftDecision(argmax), 0.0};
  result.value = value_function(alpha, w, result.argmax);
  return result;
}

double optimal_value(const AlphaOrder& alpha, const FiniteGanInstance& inst) {
  if (alpha.is_zero()) {
    throw UnsupportedOrderError("optimal value requires alpha > 0");
  }
  return value_function(alpha, inst.weights(),
                        closed_form_discriminator(alpha, inst));
}

GeneratorDescentResult minimize_generator(const AlphaOrder& alpha,
                                          const FiniteDistribution& pr,
                                          const FiniteDistribution& start,
                                          int steps, double step_size) {
  if (alpha.is_zero() || alpha.is_infinite()) {
    throw UnsupportedOrderError("generator descent requires finite alpha > 0");
  }
  if (pr.size() != start.size()) {
    throw InvalidInstanceError("start point is over a different alphabet");
  }

  FiniteDistribution pg = floored_distribution(start.probs());
  auto objective = [&](const FiniteDistribution& g) {
    return optimal_value(alpha, FiniteGanInstance(pr, g));
  };

  GeneratorDescentResult result{pg, objective(pg), false, 0};
  constexpr double kStopDisplacement = 1e-13;

  for (int step = 0; step < steps; ++step) {
    const std::vector<double> grad = optimal_value_gradient(alpha, pr, pg);
    std::vector<double> moved = pg.probs();
    for (std::size_t i = 0; i < moved.size(); ++i) {
      moved[i] -= step_size * grad[i];
    }
    FiniteDistribution next = floored_distribution(project_simplex(moved));

    double displacement = 0.0;
    for (std::size_t i = 0; i < moved.size(); ++i) {
      displacement = std::max(displacement, std::fabs(next[i] - pg[i]));
    }
    pg = next;
    result.steps_used = step + 1;

    const double value = objective(pg);
    if (value < result.value) {
      result.value = value;
      result.generated = pg;
    }
    if (displacement < kStopDisplacement) {
      result.converged = true;
      break;
    }
  }
  return result;
}

GeneratorDescentResult minimize_generator(const AlphaOrder& alpha,
                                          const FiniteDistribution& pr,
                                          int steps, double step_size) {
  const std::vector<double> uniform(
      pr.size(), 1.0 / static_cast<double>(pr.size()));
  return minimize_generator(alpha, pr, FiniteDistribution(uniform), steps,
                            step_size);
}

FiniteGanInstance random_verification_instance(SeededRng& rng,
                                               std::size_t alphabet,
                                               bool equal) {
  constexpr double kFloor = 0.1;
  constexpr double kMaxRatio = 5.0;
  auto draw = [&]() {
    std::vector<double> mass(alphabet);
    for (double& m : mass) {
      double u = rng.uniform();
      while (u == 0.0) u = rng.uniform();
      m = std::max(-std::log(u), 0.0);
    }
    std::vector<double> p = FiniteDistribution::normalized(std::move(mass)).probs();
    for (double& v : p) v = std::max(v, kFloor);
    return FiniteDistribution::normalized(std::move(p));
  };
  for (;;) {
    FiniteDistribution pr = draw();
    FiniteDistribution pg = equal ? pr : draw();
    bool ok = true;
    for (std::size_t i = 0; i < alphabet && ok; ++i) {
      const double ratio = std::max(pr[i] / pg[i], pg[i] / pr[i]);
      ok = ratio <= kMaxRatio;
    }
    if (ok) return FiniteGanInstance(std::move(pr), std::move(pg));
  }
}

std::vector<DStarRow> dstar_monotonicity_scan(
    const FiniteGanInstance& inst, const std::vector<AlphaOrder>& alphas) {
  for (std::size_t k = 1; k < alphas.size(); ++k) {
    if (alphas[k].value() < alphas[k - 1].value()) {
      throw Error("alpha grid must be sorted ascending");
    }
  }
  std::vector<SoftDecision> per_alpha;
  per_alpha.reserve(alphas.size());
  for (const AlphaOrder& a : alphas) {
    per_alpha.push_back(closed_form_discriminator(a, inst));
  }
  std::vector<DStarRow> rows;
  rows.reserve(inst.alphabet_size() * alphas.size());
  for (std::size_t x = 0; x < inst.alphabet_size(); ++x) {
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      rows.push_back({x, alphas[k].value(), per_alpha[k][x]});
    }
  }
  return rows;
}

std::string dstar_scan_to_csv(const std::vector<DStarRow>& rows) {
  std::ostringstream out;
  out << "symbol,alpha,d_star\n";
  for (const DStarRow& r : rows) {
    out << r.symbol << ',' << format_g17(r.alpha) << ','
        << format_g17(r.d_star) << '\n';
  }
  return out.str();
}

}  // namespace agan
