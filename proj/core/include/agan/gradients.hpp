#pragma once

#include <string>
#include <vector>

#include "agan/alpha_order.hpp"
#include "agan/types.hpp"

namespace agan {

// Partial derivative of V_alpha with respect to the soft decision D(x),
// up to the positive chain-rule factor of the outer log/power mean:
//
//   w_r * D^(-1/a) - w_g * (1-D)^(-1/a)
//
// Zero exactly at the closed-form optimum. Rejects a=0 (the exponent -1/a is
// undefined there); the infinite order evaluates the limit w_r - w_g.
double grad_wrt_discriminator(const AlphaOrder& alpha, double pr, double pg,
                              double d);

// Gradient of V_alpha with respect to P_g(x), proportional form:
//
//   a/(a-1) * pr/(pr+pg)^2 * ( (1-D)^((a-1)/a) - D^((a-1)/a) )
//
// Near a=1 the singular prefactor cancels against the vanishing bracket and
// the limit pr/(pr+pg)^2 * (log(1-D) - log D) is returned.
double grad_wrt_generator(const AlphaOrder& alpha, double pr, double pg,
                          double d);

// Central-difference validation of the discriminator gradient direction.
// Computes the numeric gradient of value_function with respect to every D(x)
// and returns 1 - cosine similarity against the analytic vector. The two
// vectors differ by a positive scenario-dependent constant, so the direction
// is the testable quantity. Vectors with norm below 1e-6 compare equal.
double finite_difference_check(const AlphaOrder& alpha,
                               const PairedSampleWeights& w,
                               const SoftDecision& d, double h);

struct GradScenario {
  double pr;
  double pg;
  double d;
};

enum class GradientFamily { Discriminator, Generator };

struct GradientSweepRow {
  GradientFamily family;
  double alpha;
  GradScenario scenario;
  double grad;
};

// Both gradient families over an ascending alpha grid for each scenario.
// When normalize_generator is set, the generator family is divided by the
// value of the first scenario at the largest alpha, so the reference series
// ends at exactly 1; the discriminator family is always raw.
std::vector<GradientSweepRow> sweep_alpha(
    const std::vector<GradScenario>& scenarios,
    const std::vector<AlphaOrder>& alphas, bool normalize_generator = true);

// The four legend scenarios P_g in {0.2, 0.8} x D in {0.4, 0.6}, with
// P_r = 0.3 (the value consistent with the published sweep's cross-series
// ratio of 4.84).
std::vector<GradScenario> reference_sweep_scenarios();

// alphas = 0.01 + k for k = 0..99.
std::vector<AlphaOrder> default_sweep_alphas();

// CSV with header `family,alpha,pr,pg,d,grad`, 17 significant digits.
std::string sweep_to_csv(const std::vector<GradientSweepRow>& rows);

}  // namespace agan
