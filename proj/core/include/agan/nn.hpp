#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agan/matrix.hpp"
#include "agan/rng.hpp"

namespace agan {

enum class Activation { ReLU, Sigmoid, Identity };

struct DenseLayer {
  Matrix weights;               // out x in
  std::vector<double> biases;   // out
  Activation activation = Activation::Identity;
};

struct LayerGradients {
  Matrix weights;
  std::vector<double> biases;
};

// Minimal dense MLP with manual forward/backward passes. forward() caches
// the per-layer inputs and pre-activations; backward() consumes the cache
// and returns exact reverse-mode gradients (summed over the batch) plus the
// gradient with respect to the input batch, so a generator can receive the
// discriminator's input gradient. ReLU takes subgradient 0 at exactly 0;
// sigmoid outputs are clamped into [1e-12, 1-1e-12] so they are strictly
// inside (0,1).
class MlpNetwork {
 public:
  MlpNetwork() = default;

  // widths = {in, h1, ..., out}; one activation per layer. Weights are
  // initialized uniform in +-sqrt(6/(fan_in+fan_out)), biases zero.
  static MlpNetwork dense(const std::vector<std::size_t>& widths,
                          const std::vector<Activation>& activations,
                          SeededRng& rng);

  Matrix forward(const Matrix& batch);

  struct BackwardResult {
    std::vector<LayerGradients> params;
    Matrix input;
  };
  // upstream is dLoss/dOutput for the batch of the last forward().
  // Throws StaleCacheError if shapes disagree with the cached pass.
  BackwardResult backward(const Matrix& upstream) const;

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::size_t input_width() const;
  std::size_t output_width() const;

 private:
  std::vector<DenseLayer> layers_;
  // forward cache
  std::vector<Matrix> inputs_;          // input to each layer
  std::vector<Matrix> preactivations_;  // z = W x + b per layer
  Matrix output_;
  bool has_cache_ = false;
};

// p := p - lr * g for every parameter.
void sgd_step(MlpNetwork& net, const std::vector<LayerGradients>& grads,
              double learning_rate);

struct AdamConfig {
  double learning_rate = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First/second moment buffers shaped like the network parameters plus the
// shared step counter for bias correction.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const MlpNetwork& net, AdamConfig config);

  const AdamConfig& config() const { return config_; }
  std::int64_t step_count() const { return step_count_; }

  friend void adam_step(MlpNetwork& net,
                        const std::vector<LayerGradients>& grads,
                        AdamState& state);

  // checkpoint access
  std::vector<LayerGradients>& first_moments() { return m_; }
  std::vector<LayerGradients>& second_moments() { return v_; }
  void set_step_count(std::int64_t n) { step_count_ = n; }

 private:
  AdamConfig config_;
  std::vector<LayerGradients> m_;
  std::vector<LayerGradients> v_;
  std::int64_t step_count_ = 0;
};

void adam_step(MlpNetwork& net, const std::vector<LayerGradients>& grads,
               AdamState& state);

// Parameter checkpoint: a leading magic line `AGANCKPT1` followed by a JSON
// record of layer shapes, row-major weights and optional optimizer state.
void save_checkpoint(const std::string& path, const MlpNetwork& net,
                     const AdamState* optimizer = nullptr);
// Throws FormatError on a bad magic string or truncated payload.
void load_checkpoint(const std::string& path, MlpNetwork& net,
                     AdamState* optimizer = nullptr);

}  // namespace agan
