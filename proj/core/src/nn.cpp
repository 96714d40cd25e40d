#include "agan/nn.hpp"

#include <algorithm>
#include <cmath>

#include "agan/errors.hpp"

namespace agan {

namespace {

double apply_activation(Activation act, double z) {
  switch (act) {
    case Activation::ReLU:
      return z > 0.0 ? z : 0.0;
    case Activation::Sigmoid: {
      // Stable in both tails, clamped strictly inside (0,1).
      double s;
      if (z >= 0.0) {
        s = 1.0 / (1.0 + std::exp(-z));
      } else {
        const double t = std::exp(z);
        s = t / (1.0 + t);
      }
      return std::clamp(s, 1e-12, 1.0 - 1e-12);
    }
    case Activation::Identity:
      return z;
  }
  return z;
}

// Derivative in terms of the pre-activation z. ReLU takes subgradient 0 at
// exactly 0.
double activation_derivative(Activation act, double z) {
  switch (act) {
    case Activation::ReLU:
      return z > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: {
      const double s = apply_activation(Activation::Sigmoid, z);
      return s * (1.0 - s);
    }
    case Activation::Identity:
      return 1.0;
  }
  return 1.0;
}

}  // namespace

MlpNetwork MlpNetwork::dense(const std::vector<std::size_t>& widths,
                             const std::vector<Activation>& activations,
                             SeededRng& rng) {
  if (widths.size() < 2 || activations.size() != widths.size() - 1) {
    throw DimensionError("need one activation per layer");
  }
  MlpNetwork net;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t fan_in = widths[l];
    const std::size_t fan_out = widths[l + 1];
    DenseLayer layer;
    layer.weights = Matrix(fan_out, fan_in);
    layer.biases.assign(fan_out, 0.0);
    layer.activation = activations[l];
    const double bound =
        std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& w : layer.weights.data) {
      w = rng.uniform(-bound, bound);
    }
    net.layers_.push_back(std::move(layer));
  }
  return net;
}

std::size_t MlpNetwork::input_width() const {
  return layers_.empty() ? 0 : layers_.front().weights.cols;
}

std::size_t MlpNetwork::output_width() const {
  return layers_.empty() ? 0 : layers_.back().weights.rows;
}

Matrix MlpNetwork::forward(const Matrix& batch) {
  if (layers_.empty()) {
    throw DimensionError("network has no layers");
  }
  if (batch.cols != input_width()) {
    throw DimensionError("batch width does not match the first layer");
  }
  inputs_.clear();
  preactivations_.clear();

  Matrix current = batch;
  for (const DenseLayer& layer : layers_) {
    inputs_.push_back(current);
    const std::size_t out = layer.weights.rows;
    const std::size_t in = layer.weights.cols;
    Matrix z(current.rows, out);
    for (std::size_t i = 0; i < current.rows; ++i) {
      for (std::size_t o = 0; o < out; ++o) {
        double acc = layer.biases[o];
        for (std::size_t k = 0; k < in; ++k) {
          acc += layer.weights(o, k) * current(i, k);
        }
        z(i, o) = acc;
      }
    }
    preactivations_.push_back(z);
    Matrix a(z.rows, z.cols);
    for (std::size_t idx = 0; idx < z.data.size(); ++idx) {
      a.data[idx] = apply_activation(layer.activation, z.data[idx]);
    }
    current = std::move(a);
  }
  output_ = current;
  has_cache_ = true;
  return output_;
}

MlpNetwork::BackwardResult MlpNetwork::backward(const Matrix& upstream) const {
  if (!has_cache_) {
    throw StaleCacheError("backward without a cached forward pass");
  }
  if (!upstream.same_shape(output_)) {
    throw StaleCacheError("upstream gradient shape disagrees with the cached forward");
  }

  BackwardResult result;
  result.params.resize(layers_.size());

  Matrix delta = upstream;  // becomes dLoss/dz of the current layer below
  for (std::size_t li = layers_.size(); li-- > 0;) {
    const DenseLayer& layer = layers_[li];
    const Matrix& z = preactivations_[li];
    const Matrix& x = inputs_[li];
    const std::size_t out = layer.weights.rows;
    const std::size_t in = layer.weights.cols;

    for (std::size_t idx = 0; idx < delta.data.size(); ++idx) {
      delta.data[idx] *= activation_derivative(layer.activation, z.data[idx]);
    }

    LayerGradients& g = result.params[li];
    g.weights = Matrix(out, in);
    g.biases.assign(out, 0.0);
    for (std::size_t i = 0; i < delta.rows; ++i) {
      for (std::size_t o = 0; o < out; ++o) {
        const double dz = delta(i, o);
        g.biases[o] += dz;
        for (std::size_t k = 0; k < in; ++k) {
          g.weights(o, k) += dz * x(i, k);
        }
      }
    }

    Matrix next_delta(delta.rows, in);
    for (std::size_t i = 0; i < delta.rows; ++i) {
      for (std::size_t k = 0; k < in; ++k) {
        double acc = 0.0;
        for (std::size_t o = 0; o < out; ++o) {
          acc += delta(i, o) * layer.weights(o, k);
        }
        next_delta(i, k) = acc;
      }
    }
    delta = std::move(next_delta);
  }
  result.input = std::move(delta);
  return result;
}

void sgd_step(MlpNetwork& net, const std::vector<LayerGradients>& grads,
              double learning_rate) {
  auto& layers = net.layers();
  if (grads.size() != layers.size()) {
    throw DimensionError("gradient list does not match the layer chain");
  }
  for (std::size_t li = 0; li < layers.size(); ++li) {
    if (!grads[li].weights.same_shape(layers[li].weights) ||
        grads[li].biases.size() != layers[li].biases.size()) {
      throw DimensionError("gradient shape does not match its layer");
    }
    for (std::size_t idx = 0; idx < layers[li].weights.data.size(); ++idx) {
      layers[li].weights.data[idx] -= learning_rate * grads[li].weights.data[idx];
    }
    for (std::size_t o = 0; o < layers[li].biases.size(); ++o) {
      layers[li].biases[o] -= learning_rate * grads[li].biases[o];
    }
  }
}

AdamState::AdamState(const MlpNetwork& net, AdamConfig config)
    : config_(config) {
  for (const DenseLayer& layer : net.layers()) {
    LayerGradients zero;
    zero.weights = Matrix(layer.weights.rows, layer.weights.cols);
    zero.biases.assign(layer.biases.size(), 0.0);
    m_.push_back(zero);
    v_.push_back(zero);
  }
}

void adam_step(MlpNetwork& net, const std::vector<LayerGradients>& grads,
               AdamState& state) {
  auto& layers = net.layers();
  if (grads.size() != layers.size() || state.m_.size() != layers.size()) {
    throw DimensionError("optimizer state does not match the layer chain");
  }
  state.step_count_ += 1;
  const AdamConfig& c = state.config_;
  const double t = static_cast<double>(state.step_count_);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);

  auto update = [&](double& param, double grad, double& m, double& v) {
    m = c.beta1 * m + (1.0 - c.beta1) * grad;
    v = c.beta2 * v + (1.0 - c.beta2) * grad * grad;
    const double mhat = m / correction1;
    const double vhat = v / correction2;
    param -= c.learning_rate * mhat / (std::sqrt(vhat) + c.epsilon);
  };

  for (std::size_t li = 0; li < layers.size(); ++li) {
    if (!grads[li].weights.same_shape(layers[li].weights)) {
      throw DimensionError("gradient shape does not match its layer");
    }
    for (std::size_t idx = 0; idx < layers[li].weights.data.size(); ++idx) {
      update(layers[li].weights.data[idx], grads[li].weights.data[idx],
             state.m_[li].weights.data[idx], state.v_[li].weights.data[idx]);
    }
    for (std::size_t o = 0; o < layers[li].biases.size(); ++o) {
      update(layers[li].biases[o], grads[li].biases[o],
             state.m_[li].biases[o], state.v_[li].biases[o]);
    }
  }
}

}  // namespace agan
