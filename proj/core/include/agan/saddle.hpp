#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "agan/alpha_order.hpp"
#include "agan/rng.hpp"
#include "agan/types.hpp"

namespace agan {

// A GAN problem on a finite alphabet: true distribution pr and generator
// distribution pg over the same symbols. Symbols where both probabilities
// vanish are dropped at construction.
class FiniteGanInstance {
 public:
  FiniteGanInstance(FiniteDistribution pr, FiniteDistribution pg);

  std::size_t alphabet_size() const { return pr_.size(); }
  const FiniteDistribution& real() const { return pr_; }
  const FiniteDistribution& generated() const { return pg_; }

  // Fractional chances per symbol, the inputs to the value function.
  PairedSampleWeights weights() const;

 private:
  FiniteDistribution pr_;
  FiniteDistribution pg_;
};

// The maximizer of V_alpha over the discriminator,
//   D*(x) = P_r(x)^a / (P_r(x)^a + P_g(x)^a) = 1 / (1 + (P_g/P_r)^a),
// evaluated in the log domain. At a=0 the optimal decision is 0.5 everywhere.
SoftDecision closed_form_discriminator(const AlphaOrder& alpha,
                                       const FiniteGanInstance& inst);

struct GridSearchResult {
  SoftDecision argmax;
  double value = 0.0;
};

// Independent oracle for the closed form: per-symbol grid search of the
// value function over D(x) in {delta, ..., 1-delta} with grid_points points.
// The maximization is separable per symbol; ties break to the lowest D.
GridSearchResult brute_force_max_discriminator(const AlphaOrder& alpha,
                                               const FiniteGanInstance& inst,
                                               int grid_points);

// Value function at the closed-form discriminator. Equals the negated
// Arimoto conditional entropy of the instance's fractional chances.
double optimal_value(const AlphaOrder& alpha, const FiniteGanInstance& inst);

struct GeneratorDescentResult {
  FiniteDistribution generated;
  double value = 0.0;
  bool converged = false;
  int steps_used = 0;
};

// Projected gradient descent of optimal_value over P_g on the probability
// simplex (Euclidean projection after every step, fixed step size). From a
// strictly positive start this converges to P_g = pr with value -log 2 for
// alpha >= 1; for alpha < 1 convergence is empirical, and a run that fails
// to converge returns its best iterate with converged=false.
GeneratorDescentResult minimize_generator(const AlphaOrder& alpha,
                                          const FiniteDistribution& pr,
                                          const FiniteDistribution& start,
                                          int steps, double step_size);

// Convenience overload starting from the uniform distribution.
GeneratorDescentResult minimize_generator(const AlphaOrder& alpha,
                                          const FiniteDistribution& pr,
                                          int steps, double step_size);

// Seeded random instance for oracle trials. Probabilities are floored at
// 0.1 and the per-symbol ratio pg/pr is capped at 5, which keeps every
// optimum visible to a 1e4-point grid and the descent objective well
// conditioned at step size 0.05.
FiniteGanInstance random_verification_instance(SeededRng& rng,
                                               std::size_t alphabet,
                                               bool equal = false);

struct DStarRow {
  std::size_t symbol;
  double alpha;
  double d_star;
};

// D* per symbol per alpha. For symbols with P_g < P_r the column is
// non-decreasing in alpha, for P_g > P_r non-increasing.
std::vector<DStarRow> dstar_monotonicity_scan(
    const FiniteGanInstance& inst, const std::vector<AlphaOrder>& alphas);

// CSV with header `symbol,alpha,d_star`, 17 significant digits.
std::string dstar_scan_to_csv(const std::vector<DStarRow>& rows);

}  // namespace agan
