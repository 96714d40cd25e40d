#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "agan/alpha_order.hpp"
#include "agan/metrics.hpp"
#include "agan/nn.hpp"
#include "agan/types.hpp"

namespace agan {

struct Gaussian1D {
  double mean = 0.0;
  double stddev = 1.0;
};

struct MnistSubset {
  std::string path;
  std::size_t max_images = 512;
};

using DataSource = std::variant<Gaussian1D, MnistSubset>;

enum class OptimizerKind { SGD, Adam };

struct TrainConfig {
  AlphaOrder alpha{1.0};
  int latent_dim = 5;
  int batch_size = 128;
  double learning_rate = 2e-4;
  int epochs = 10000;
  std::uint64_t seed = 1;
  int d_steps_per_g_step = 1;
  OptimizerKind optimizer = OptimizerKind::SGD;
  DataSource data_source = Gaussian1D{};
  int hidden_width = 32;  // 128 is the usual choice for MNIST
  int record_interval = 100;
  int histogram_interval = 1000;
  int metrics_sample_size = 1024;

  void validate() const;  // batch_size >= 2, epochs >= 1, latent_dim >= 1
};

struct MetricsRecord {
  int epoch;
  double d_loss;
  double g_loss;
  double wasserstein1;
  double ks_stat;
  double d_flatness;  // mean |D(x) - 0.5| on real samples
};

struct HistogramSnapshot {
  int epoch;
  std::vector<HistogramRow> rows;
};

struct ValueLoss {
  double loss = 0.0;
  std::vector<double> grad_real;  // dLoss/dD(x) per real sample
  std::vector<double> grad_fake;  // dLoss/dD(x) per fake sample
};

// Minibatch estimate of V_alpha on disjoint real/fake batches: real samples
// take the 'r' branch and fake samples the 'g' branch with uniform 1/(2B)
// averaging, which reduces exactly to minibatch binary cross entropy near
// alpha=1. Outputs are clamped before evaluation; gradients are exact for
// the clamped values. Evaluated with log-sum-exp so no finite alpha can
// overflow the power terms.
ValueLoss empirical_value_loss(const AlphaOrder& alpha,
                               const std::vector<double>& d_real,
                               const std::vector<double>& d_fake,
                               double clamp = SoftDecision::kDefaultClamp);

struct TrainResult {
  MlpNetwork discriminator;
  MlpNetwork generator;
  std::vector<MetricsRecord> metrics;
  std::vector<HistogramSnapshot> histograms;
};

// Alternating alpha-GAN training: per epoch, sample a real batch and latent
// noise, ascend the discriminator on V_alpha (d_steps_per_g_step times),
// then descend the generator on V_alpha with the gradient flowing through
// the discriminator's input gradient. Metrics are recorded before the first
// step (epoch 0) and at every record_interval epochs; histograms at every
// histogram_interval epochs. Fully deterministic given the seed. A
// non-finite loss aborts with TrainingDivergenceError naming the epoch and
// alpha.
TrainResult train(const TrainConfig& config);

// CSV with header `epoch,d_loss,g_loss,wasserstein1,ks_stat,d_flatness`.
std::string metrics_to_csv(const std::vector<MetricsRecord>& records);

}  // namespace agan
