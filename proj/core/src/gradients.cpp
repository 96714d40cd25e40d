#include "agan/gradients.hpp"

#include <cmath>
#include <sstream>

#include "agan/errors.hpp"
#include "agan/format.hpp"
#include "agan/value_function.hpp"

namespace agan {

namespace {

void require_scenario(double pr, double pg, double d) {
  if (!(pr >= 0.0) || !(pg >= 0.0) || !(pr + pg > 0.0)) {
    throw InvalidInstanceError("scenario weights must be nonnegative with positive total");
  }
  if (!(d > 0.0) || !(d < 1.0)) {
    throw InvalidInstanceError("soft decision must lie strictly inside (0,1)");
  }
}

}  // namespace

double grad_wrt_discriminator(const AlphaOrder& alpha, double pr, double pg,
                              double d) {
  require_scenario(pr, pg, d);
  if (alpha.is_zero()) {
    throw UnsupportedOrderError(
        "discriminator gradient is undefined at alpha = 0");
  }
  const double wr = pr / (pr + pg);
  const double wg = pg / (pr + pg);
  // exponent -1/alpha, which is 0 in the infinite-order limit
  const double s = alpha.is_infinite() ? 0.0 : -1.0 / alpha.value();
  return wr * std::exp(s * std::log(d)) - wg * std::exp(s * std::log(1.0 - d));
}

double grad_wrt_generator(const AlphaOrder& alpha, double pr, double pg,
                          double d) {
  require_scenario(pr, pg, d);
  if (alpha.is_zero()) {
    throw UnsupportedOrderError("generator gradient is undefined at alpha = 0");
  }
  const double scale = pr / ((pr + pg) * (pr + pg));
  if (alpha.is_near_one()) {
    // The a/(a-1) prefactor cancels the vanishing bracket; the limit keeps
    // log(1-D) - log D.
    return scale * (std::log(1.0 - d) - std::log(d));
  }
  const double e = alpha.is_infinite() ? 1.0 : alpha.power_mean_order();
  const double c = alpha.is_infinite() ? 1.0 : alpha.log_prefactor();
  const double bracket =
      std::exp(e * std::log(1.0 - d)) - std::exp(e * std::log(d));
  return c * scale * bracket;
}

double finite_difference_check(const AlphaOrder& alpha,
                               const PairedSampleWeights& w,
                               const SoftDecision& d, double h) {
  if (!(h >= 1e-8) || !(h <= 1e-3)) {
    throw InvalidInstanceError("step size must lie in [1e-8, 1e-3]");
  }
  const std::size_t n = d.size();
  std::vector<double> numeric(n, 0.0);
  std::vector<double> analytic(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> up = d.values();
    std::vector<double> down = d.values();
    up[i] += h;
    down[i] -= h;
    const double v_up = value_function(alpha, w, SoftDecision(up, d.clamp()));
    const double v_down =
        value_function(alpha, w, SoftDecision(down, d.clamp()));
    numeric[i] = (v_up - v_down) / (2.0 * h);
    analytic[i] = grad_wrt_discriminator(alpha, w.pr(i), w.pg(i), d[i]);
  }

  double nn = 0.0, aa = 0.0, na = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    nn += numeric[i] * numeric[i];
    aa += analytic[i] * analytic[i];
    na += numeric[i] * analytic[i];
  }
  constexpr double kZeroNorm = 1e-6;
  if (std::sqrt(nn) < kZeroNorm && std::sqrt(aa) < kZeroNorm) {
    return 0.0;  // both gradients vanish; the directions compare equal
  }
  const double cosine = na / (std::sqrt(nn) * std::sqrt(aa));
  return 1.0 - cosine;
}

std::vector<GradientSweepRow> sweep_alpha(
    const std::vector<GradScenario>& scenarios,
    const std::vector<AlphaOrder>& alphas, bool normalize_generator) {
  if (scenarios.empty() || alphas.empty()) {
    throw DimensionError("sweep needs at least one scenario and one alpha");
  }
  for (std::size_t k = 1; k < alphas.size(); ++k) {
    if (alphas[k].value() < alphas[k - 1].value()) {
      throw Error("alpha grid must be sorted ascending");
    }
  }
  if (alphas.back().value() > 100.0 || !(alphas.front().value() > 0.0)) {
    throw UnsupportedOrderError("sweep grid must lie within (0, 100]");
  }

  double generator_scale = 1.0;
  if (normalize_generator) {
    const GradScenario& ref = scenarios.front();
    generator_scale =
        grad_wrt_generator(alphas.back(), ref.pr, ref.pg, ref.d);
  }

  std::vector<GradientSweepRow> rows;
  rows.reserve(2 * scenarios.size() * alphas.size());
  for (const GradScenario& sc : scenarios) {
    for (const AlphaOrder& a : alphas) {
      rows.push_back({GradientFamily::Discriminator, a.value(), sc,
                      grad_wrt_discriminator(a, sc.pr, sc.pg, sc.d)});
    }
  }
  for (const GradScenario& sc : scenarios) {
    for (const AlphaOrder& a : alphas) {
      rows.push_back({GradientFamily::Generator, a.value(), sc,
                      grad_wrt_generator(a, sc.pr, sc.pg, sc.d) /
                          generator_scale});
    }
  }
  return rows;
}

std::vector<GradScenario> reference_sweep_scenarios() {
  constexpr double kReferencePr = 0.3;
  return {{kReferencePr, 0.2, 0.4},
          {kReferencePr, 0.2, 0.6},
          {kReferencePr, 0.8, 0.4},
          {kReferencePr, 0.8, 0.6}};
}

std::vector<AlphaOrder> default_sweep_alphas() {
  std::vector<AlphaOrder> alphas;
  alphas.reserve(100);
  for (int k = 0; k < 100; ++k) {
    alphas.push_back(AlphaOrder(0.01 + static_cast<double>(k)));
  }
  return alphas;
}

std::string sweep_to_csv(const std::vector<GradientSweepRow>& rows) {
  std::ostringstream out;
  out << "family,alpha,pr,pg,d,grad\n";
  for (const GradientSweepRow& r : rows) {
    out << (r.family == GradientFamily::Discriminator ? "discriminator"
                                                      : "generator")
        << ',' << format_g17(r.alpha) << ',' << format_g17(r.scenario.pr)
        << ',' << format_g17(r.scenario.pg) << ',' << format_g17(r.scenario.d)
        << ',' << format_g17(r.grad) << '\n';
  }
  return out.str();
}

}  // namespace agan
