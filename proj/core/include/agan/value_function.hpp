#pragma once

#include <vector>

#include "agan/alpha_order.hpp"
#include "agan/types.hpp"

namespace agan {

// The alpha-parameterized GAN value function
//
//   V_alpha(D, P_g) = a/(a-1) * log( 1/N * sum_x [ w_r(x) D(x)^((a-1)/a)
//                                                + w_g(x) (1-D(x))^((a-1)/a) ] )
//
// with w_r, w_g the fractional chances of the paired weights. Limit regimes:
//   near 1:   1/N * sum_x [ w_r log D + w_g log(1-D) ]   (binary cross entropy)
//   infinite: log of the mean 0-1 gain, 1/N * sum_x [ w_r D + w_g (1-D) ]
//   zero:     log min_x min{ D(x), 1-D(x) }
//
// Powers are evaluated in the log domain; V <= 0 for all valid inputs.
// Throws DimensionError on mismatched lengths and NumericOverflowError when
// an intermediate leaves the representable range.
double value_function(const AlphaOrder& alpha, const PairedSampleWeights& w,
                      const SoftDecision& d);

// Renyi conditional cross entropy of the soft decision against the
// fractional chances; identically -value_function.
double renyi_conditional_cross_entropy(const AlphaOrder& alpha,
                                       const PairedSampleWeights& w,
                                       const SoftDecision& d);

// Arimoto conditional entropy of the fractional chances,
//
//   H_alpha = a/(1-a) * log( 1/N * sum_x (w_r(x)^a + w_g(x)^a)^(1/a) )
//
// with the Shannon limit near a=1 and the hard-decision limit at a=inf.
// The order a=0 is rejected (UnsupportedOrderError).
double arimoto_conditional_entropy(const AlphaOrder& alpha,
                                   const PairedSampleWeights& w);

// The alpha-loss for classification,
//
//   L_alpha = ( 1/N * sum_{x,y} P(y|x) Phat(y|x)^((a-1)/a) )^(a/(1-a)),
//
// evaluating to exp of the Shannon cross entropy near a=1. cond and pred are
// aligned per-sample label distributions over the same alphabet; terms with
// P(y|x)=0 contribute nothing regardless of Phat.
double alpha_classification_loss(const AlphaOrder& alpha,
                                 const std::vector<FiniteDistribution>& cond,
                                 const std::vector<FiniteDistribution>& pred);

}  // namespace agan
