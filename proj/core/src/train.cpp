#include "agan/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "agan/errors.hpp"
#include "agan/format.hpp"
#include "agan/mnist.hpp"

namespace agan {

namespace {

double clamp_decision(double v, double clamp) {
  return std::clamp(v, clamp, 1.0 - clamp);
}

double log_sum_exp(const std::vector<double>& t) {
  double tmax = -std::numeric_limits<double>::infinity();
  for (double v : t) tmax = std::max(tmax, v);
  if (!std::isfinite(tmax)) return tmax;
  double sum = 0.0;
  for (double v : t) sum += std::exp(v - tmax);
  return tmax + std::log(sum);
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 2) throw InvalidInstanceError("batch_size must be >= 2");
  if (epochs < 1) throw InvalidInstanceError("epochs must be >= 1");
  if (latent_dim < 1) throw InvalidInstanceError("latent_dim must be >= 1");
  if (hidden_width < 1) throw InvalidInstanceError("hidden_width must be >= 1");
  if (!(learning_rate > 0.0)) {
    throw InvalidInstanceError("learning_rate must be positive");
  }
  if (d_steps_per_g_step < 1) {
    throw InvalidInstanceError("d_steps_per_g_step must be >= 1");
  }
  if (record_interval < 1 || histogram_interval < 1) {
    throw InvalidInstanceError("recording intervals must be >= 1");
  }
  if (metrics_sample_size < 2) {
    throw InvalidInstanceError("metrics_sample_size must be >= 2");
  }
  if (alpha.is_zero()) {
    throw UnsupportedOrderError("training requires alpha > 0");
  }
}

ValueLoss empirical_value_loss(const AlphaOrder& alpha,
                               const std::vector<double>& d_real,
                               const std::vector<double>& d_fake,
                               double clamp) {
  if (d_real.empty() || d_fake.empty()) {
    throw DimensionError("empty minibatch");
  }
  if (alpha.is_zero()) {
    throw UnsupportedOrderError("the minibatch loss requires alpha > 0");
  }
  const std::size_t nr = d_real.size();
  const std::size_t nf = d_fake.size();
  const double n = static_cast<double>(nr + nf);

  ValueLoss out;
  out.grad_real.assign(nr, 0.0);
  out.grad_fake.assign(nf, 0.0);

  if (alpha.is_near_one()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
      const double d = clamp_decision(d_real[i], clamp);
      acc += std::log(d);
      out.grad_real[i] = 1.0 / (n * d);
    }
    for (std::size_t j = 0; j < nf; ++j) {
      const double d = clamp_decision(d_fake[j], clamp);
      acc += std::log(1.0 - d);
      out.grad_fake[j] = -1.0 / (n * (1.0 - d));
    }
    out.loss = acc / n;
    return out;
  }

  if (alpha.is_infinite()) {
    double mean = 0.0;
    for (double d : d_real) mean += clamp_decision(d, clamp);
    for (double d : d_fake) mean += 1.0 - clamp_decision(d, clamp);
    mean /= n;
    out.loss = std::log(mean);
    for (std::size_t i = 0; i < nr; ++i) out.grad_real[i] = 1.0 / (n * mean);
    for (std::size_t j = 0; j < nf; ++j) out.grad_fake[j] = -1.0 / (n * mean);
    return out;
  }

  const double e = alpha.power_mean_order();
  std::vector<double> terms;
  terms.reserve(nr + nf);
  for (double d : d_real) {
    terms.push_back(e * std::log(clamp_decision(d, clamp)));
  }
  for (double d : d_fake) {
    terms.push_back(e * std::log(1.0 - clamp_decision(d, clamp)));
  }
  const double log_mean = log_sum_exp(terms) - std::log(n);
  out.loss = alpha.log_prefactor() * log_mean;
  if (!std::isfinite(out.loss)) {
    throw NumericOverflowError("minibatch value loss left the stable range");
  }
  // d(loss)/dD = D^(e-1) / (n * mean); the a/(a-1) prefactor cancels the
  // exponent e from the chain rule exactly.
  for (std::size_t i = 0; i < nr; ++i) {
    const double d = clamp_decision(d_real[i], clamp);
    out.grad_real[i] = std::exp((e - 1.0) * std::log(d) - log_mean) / n;
  }
  for (std::size_t j = 0; j < nf; ++j) {
    const double d = clamp_decision(d_fake[j], clamp);
    out.grad_fake[j] = -std::exp((e - 1.0) * std::log(1.0 - d) - log_mean) / n;
  }
  return out;
}

namespace {

struct TrainState {
  MlpNetwork d_net;
  MlpNetwork g_net;
  AdamState d_adam;
  AdamState g_adam;
  OptimizerKind optimizer;
  double learning_rate = 0.0;
};

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows + bottom.rows, top.cols);
  std::copy(top.data.begin(), top.data.end(), out.data.begin());
  std::copy(bottom.data.begin(), bottom.data.end(),
            out.data.begin() + static_cast<std::ptrdiff_t>(top.data.size()));
  return out;
}

std::vector<double> column(const Matrix& m) {
  std::vector<double> v(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) v[i] = m(i, 0);
  return v;
}

void apply_update(MlpNetwork& net, const std::vector<LayerGradients>& grads,
                  TrainState& state, bool is_discriminator) {
  if (state.optimizer == OptimizerKind::SGD) {
    sgd_step(net, grads, state.learning_rate);
  } else {
    adam_step(net, grads, is_discriminator ? state.d_adam : state.g_adam);
  }
}

// Scalar view of a sample for the 1-D convergence metrics: the value itself
// in one dimension, the mean pixel otherwise.
std::vector<double> scalar_projection(const Matrix& batch) {
  std::vector<double> v(batch.rows, 0.0);
  for (std::size_t i = 0; i < batch.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < batch.cols; ++j) acc += batch(i, j);
    v[i] = acc / static_cast<double>(batch.cols);
  }
  return v;
}

}  // namespace

TrainResult train(const TrainConfig& config) {
  config.validate();
  SeededRng rng(config.seed);
  SeededRng metrics_rng = rng.fork(0xA11CEULL);

  const bool is_mnist = std::holds_alternative<MnistSubset>(config.data_source);
  Matrix mnist_images;
  std::size_t data_dim = 1;
  if (is_mnist) {
    const auto& src = std::get<MnistSubset>(config.data_source);
    mnist_images = load_mnist_subset(src.path, src.max_images);
    if (mnist_images.rows < static_cast<std::size_t>(config.batch_size)) {
      throw InvalidInstanceError("MNIST subset smaller than one batch");
    }
    data_dim = mnist_images.cols;
  }

  const std::size_t latent = static_cast<std::size_t>(config.latent_dim);
  const std::size_t hidden = static_cast<std::size_t>(config.hidden_width);

  TrainState state;
  state.optimizer = config.optimizer;
  state.learning_rate = config.learning_rate;
  state.g_net = MlpNetwork::dense(
      {latent, hidden, data_dim},
      {Activation::ReLU, is_mnist ? Activation::Sigmoid : Activation::Identity},
      rng);
  state.d_net = MlpNetwork::dense({data_dim, hidden, 1},
                                  {Activation::ReLU, Activation::Sigmoid}, rng);
  if (config.optimizer == OptimizerKind::Adam) {
    AdamConfig adam;
    adam.learning_rate = config.learning_rate;
    state.d_adam = AdamState(state.d_net, adam);
    state.g_adam = AdamState(state.g_net, adam);
  }

  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  const auto gaussian = is_mnist ? Gaussian1D{} : std::get<Gaussian1D>(config.data_source);

  auto sample_real = [&](SeededRng& source, std::size_t count) {
    Matrix m(count, data_dim);
    if (is_mnist) {
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t pick = source.uniform_index(mnist_images.rows);
        for (std::size_t j = 0; j < data_dim; ++j) {
          m(i, j) = mnist_images(pick, j);
        }
      }
    } else {
      for (double& v : m.data) {
        v = gaussian.mean + gaussian.stddev * source.normal();
      }
    }
    return m;
  };
  auto sample_latent = [&](SeededRng& source, std::size_t count) {
    Matrix m(count, latent);
    for (double& v : m.data) v = source.normal();
    return m;
  };

  const double alpha_value = config.alpha.value();
  auto guard_finite = [&](double loss, int epoch) {
    if (!std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "training diverged: non-finite loss at epoch " << epoch
          << " with alpha " << format_g17(alpha_value);
      throw TrainingDivergenceError(msg.str(), epoch, alpha_value);
    }
  };

  TrainResult result;
  double last_d_loss = 0.0;
  double last_g_loss = 0.0;

  auto eval_loss = [&]() {
    // Loss on fresh metric batches; used for the epoch-0 record.
    Matrix real = sample_real(metrics_rng, batch);
    Matrix z = sample_latent(metrics_rng, batch);
    Matrix fake = state.g_net.forward(z);
    Matrix out = state.d_net.forward(vstack(real, fake));
    std::vector<double> d_all = column(out);
    std::vector<double> d_real(d_all.begin(), d_all.begin() + batch);
    std::vector<double> d_fake(d_all.begin() + batch, d_all.end());
    return empirical_value_loss(config.alpha, d_real, d_fake).loss;
  };

  auto record = [&](int epoch) {
    const bool want_metrics = epoch == 0 || epoch % config.record_interval == 0;
    const bool want_hist = epoch == 0 || epoch % config.histogram_interval == 0;
    if (!want_metrics && !want_hist) return;

    const std::size_t eval_n =
        static_cast<std::size_t>(config.metrics_sample_size);
    Matrix real_eval = sample_real(metrics_rng, eval_n);
    Matrix z_eval = sample_latent(metrics_rng, eval_n);
    Matrix gen_eval = state.g_net.forward(z_eval);

    if (want_metrics) {
      Matrix d_out = state.d_net.forward(real_eval);
      double flatness = 0.0;
      for (std::size_t i = 0; i < d_out.rows; ++i) {
        flatness += std::fabs(d_out(i, 0) - 0.5);
      }
      flatness /= static_cast<double>(d_out.rows);

      const std::vector<double> real_scalar = scalar_projection(real_eval);
      const std::vector<double> gen_scalar = scalar_projection(gen_eval);
      if (epoch == 0) {
        last_d_loss = eval_loss();
        last_g_loss = last_d_loss;
      }
      MetricsRecord rec;
      rec.epoch = epoch;
      rec.d_loss = last_d_loss;
      rec.g_loss = last_g_loss;
      rec.wasserstein1 = wasserstein1_1d(real_scalar, gen_scalar);
      rec.ks_stat = ks_statistic(real_scalar, gen_scalar);
      rec.d_flatness = flatness;
      result.metrics.push_back(rec);
    }
    if (want_hist) {
      result.histograms.push_back(
          {epoch, paired_histogram(scalar_projection(real_eval),
                                   scalar_projection(gen_eval))});
    }
  };

  record(0);

  const std::size_t steps_per_epoch =
      is_mnist ? std::max<std::size_t>(1, mnist_images.rows / batch) : 1;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t step = 0; step < steps_per_epoch; ++step) {
      Matrix real = sample_real(rng, batch);
      Matrix z = sample_latent(rng, batch);
      Matrix fake = state.g_net.forward(z);
      Matrix combined = vstack(real, fake);

      // Discriminator ascent on V_alpha.
      for (int k = 0; k < config.d_steps_per_g_step; ++k) {
        Matrix out = state.d_net.forward(combined);
        std::vector<double> d_all = column(out);
        std::vector<double> d_real(d_all.begin(), d_all.begin() + batch);
        std::vector<double> d_fake(d_all.begin() + batch, d_all.end());
        ValueLoss loss;
        try {
          loss = empirical_value_loss(config.alpha, d_real, d_fake);
        } catch (const NumericOverflowError&) {
          guard_finite(std::numeric_limits<double>::infinity(), epoch);
        }
        guard_finite(loss.loss, epoch);
        last_d_loss = loss.loss;

        Matrix upstream(out.rows, 1);
        for (std::size_t i = 0; i < batch; ++i) {
          upstream(i, 0) = -loss.grad_real[i];
        }
        for (std::size_t j = 0; j < batch; ++j) {
          upstream(batch + j, 0) = -loss.grad_fake[j];
        }
        auto bw = state.d_net.backward(upstream);
        apply_update(state.d_net, bw.params, state, true);
      }

      // Generator descent; the gradient reaches G through the input gradient
      // of the discriminator on the fake half.
      Matrix out = state.d_net.forward(combined);
      std::vector<double> d_all = column(out);
      std::vector<double> d_real(d_all.begin(), d_all.begin() + batch);
      std::vector<double> d_fake(d_all.begin() + batch, d_all.end());
      ValueLoss loss;
      try {
        loss = empirical_value_loss(config.alpha, d_real, d_fake);
      } catch (const NumericOverflowError&) {
        guard_finite(std::numeric_limits<double>::infinity(), epoch);
      }
      guard_finite(loss.loss, epoch);
      last_g_loss = loss.loss;

      Matrix upstream(out.rows, 1);
      for (std::size_t i = 0; i < batch; ++i) upstream(i, 0) = 0.0;
      for (std::size_t j = 0; j < batch; ++j) {
        upstream(batch + j, 0) = loss.grad_fake[j];
      }
      auto d_bw = state.d_net.backward(upstream);
      Matrix g_upstream(batch, data_dim);
      for (std::size_t j = 0; j < batch; ++j) {
        for (std::size_t c = 0; c < data_dim; ++c) {
          g_upstream(j, c) = d_bw.input(batch + j, c);
        }
      }
      auto g_bw = state.g_net.backward(g_upstream);
      apply_update(state.g_net, g_bw.params, state, false);
    }
    record(epoch);
  }

  result.discriminator = std::move(state.d_net);
  result.generator = std::move(state.g_net);
  return result;
}

std::string metrics_to_csv(const std::vector<MetricsRecord>& records) {
  std::ostringstream out;
  out << "epoch,d_loss,g_loss,wasserstein1,ks_stat,d_flatness\n";
  for (const MetricsRecord& r : records) {
    out << r.epoch << ',' << format_g17(r.d_loss) << ',' << format_g17(r.g_loss)
        << ',' << format_g17(r.wasserstein1) << ',' << format_g17(r.ks_stat)
        << ',' << format_g17(r.d_flatness) << '\n';
  }
  return out.str();
}

}  // namespace agan
