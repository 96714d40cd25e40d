// Independent oracles used by the tests. Everything here is written as a
// second route: naive loops, direct formula evaluation, brute force. None of
// it calls the implementation paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "agan/matrix.hpp"
#include "agan/nn.hpp"
#include "agan/rng.hpp"

namespace oracle {

// Weighted binary cross entropy with fractional-chance weights, the alpha=1
// limit of the value function. Coded directly from the defining sum.
inline double weighted_bce(const std::vector<double>& pr,
                           const std::vector<double>& pg,
                           const std::vector<double>& d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double wr = pr[i] / (pr[i] + pg[i]);
    acc += wr * std::log(d[i]) + (1.0 - wr) * std::log(1.0 - d[i]);
  }
  return acc / static_cast<double>(d.size());
}

// Minibatch binary cross entropy over disjoint real/fake halves.
inline double minibatch_bce(const std::vector<double>& d_real,
                            const std::vector<double>& d_fake) {
  double acc = 0.0;
  for (double d : d_real) acc += std::log(d);
  for (double d : d_fake) acc += std::log(1.0 - d);
  return acc / static_cast<double>(d_real.size() + d_fake.size());
}

// Exact Wasserstein-1 between empirical distributions as the area between
// the two CDFs, swept over the merged support.
inline double w1_cdf_integral(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  merged.insert(merged.end(), a.begin(), a.end());
  merged.insert(merged.end(), b.begin(), b.end());
  std::sort(merged.begin(), merged.end());

  double area = 0.0;
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    const double x = merged[k];
    const double gap = merged[k + 1] - merged[k];
    const double fa =
        static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) /
        static_cast<double>(a.size());
    const double fb =
        static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) /
        static_cast<double>(b.size());
    area += std::fabs(fa - fb) * gap;
  }
  return area;
}

// KS statistic by direct counting at every merged point.
inline double ks_brute_force(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  merged.insert(merged.end(), a.begin(), a.end());
  merged.insert(merged.end(), b.begin(), b.end());
  double stat = 0.0;
  for (double x : merged) {
    double ca = 0.0, cb = 0.0;
    for (double v : a) {
      if (v <= x) ca += 1.0;
    }
    for (double v : b) {
      if (v <= x) cb += 1.0;
    }
    stat = std::max(stat, std::fabs(ca / static_cast<double>(a.size()) -
                                    cb / static_cast<double>(b.size())));
  }
  return stat;
}

// Matrix-by-hand forward pass through a dense network, kept deliberately
// naive and separate from MlpNetwork::forward.
inline agan::Matrix naive_forward(const agan::MlpNetwork& net,
                                  const agan::Matrix& batch) {
  std::vector<std::vector<double>> rows(batch.rows);
  for (std::size_t i = 0; i < batch.rows; ++i) {
    rows[i].assign(batch.data.begin() + i * batch.cols,
                   batch.data.begin() + (i + 1) * batch.cols);
  }
  for (const agan::DenseLayer& layer : net.layers()) {
    for (auto& x : rows) {
      std::vector<double> y(layer.weights.rows, 0.0);
      for (std::size_t o = 0; o < layer.weights.rows; ++o) {
        double z = layer.biases[o];
        for (std::size_t k = 0; k < layer.weights.cols; ++k) {
          z += layer.weights(o, k) * x[k];
        }
        switch (layer.activation) {
          case agan::Activation::ReLU:
            y[o] = std::max(z, 0.0);
            break;
          case agan::Activation::Sigmoid:
            y[o] = std::clamp(1.0 / (1.0 + std::exp(-z)), 1e-12, 1.0 - 1e-12);
            break;
          case agan::Activation::Identity:
            y[o] = z;
            break;
        }
      }
      x = std::move(y);
    }
  }
  agan::Matrix out(batch.rows, rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < out.rows; ++i) {
    for (std::size_t j = 0; j < out.cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

// Central finite differences of a scalar loss over every network parameter.
template <typename LossFn>
std::vector<agan::LayerGradients> fd_parameter_gradients(agan::MlpNetwork net,
                                                         LossFn loss,
                                                         double h = 1e-5) {
  std::vector<agan::LayerGradients> grads;
  for (std::size_t li = 0; li < net.layers().size(); ++li) {
    agan::LayerGradients g;
    g.weights = agan::Matrix(net.layers()[li].weights.rows,
                             net.layers()[li].weights.cols);
    g.biases.assign(net.layers()[li].biases.size(), 0.0);
    for (std::size_t idx = 0; idx < g.weights.data.size(); ++idx) {
      double& p = net.layers()[li].weights.data[idx];
      const double saved = p;
      p = saved + h;
      const double up = loss(net);
      p = saved - h;
      const double down = loss(net);
      p = saved;
      g.weights.data[idx] = (up - down) / (2.0 * h);
    }
    for (std::size_t o = 0; o < g.biases.size(); ++o) {
      double& p = net.layers()[li].biases[o];
      const double saved = p;
      p = saved + h;
      const double up = loss(net);
      p = saved - h;
      const double down = loss(net);
      p = saved;
      g.biases[o] = (up - down) / (2.0 * h);
    }
    grads.push_back(std::move(g));
  }
  return grads;
}

// IDX image file writer for fixtures: big-endian header + raw pixel bytes.
inline void write_idx_images(const std::string& path, std::uint32_t magic,
                             const std::vector<std::vector<unsigned char>>& images,
                             std::uint32_t rows, std::uint32_t cols,
                             bool truncate_payload = false) {
  std::ofstream out(path, std::ios::binary);
  auto put_u32 = [&](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<char*>(b), 4);
  };
  put_u32(magic);
  put_u32(static_cast<std::uint32_t>(images.size()));
  put_u32(rows);
  put_u32(cols);
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::size_t n = images[i].size();
    if (truncate_payload && i + 1 == images.size()) n /= 2;
    out.write(reinterpret_cast<const char*>(images[i].data()),
              static_cast<std::streamsize>(n));
  }
}

inline std::vector<std::vector<unsigned char>> synthetic_digit_images(
    std::uint64_t seed, std::size_t count, std::size_t rows, std::size_t cols) {
  agan::SeededRng rng(seed);
  std::vector<std::vector<unsigned char>> images(count);
  for (auto& img : images) {
    img.resize(rows * cols);
    // blurred random blob, vaguely digit-like intensity statistics
    const double cx = rng.uniform(0.3, 0.7) * static_cast<double>(cols);
    const double cy = rng.uniform(0.3, 0.7) * static_cast<double>(rows);
    const double sx = rng.uniform(2.0, 5.0);
    const double sy = rng.uniform(2.0, 5.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const double dx = (static_cast<double>(c) - cx) / sx;
        const double dy = (static_cast<double>(r) - cy) / sy;
        const double v = 255.0 * std::exp(-0.5 * (dx * dx + dy * dy));
        img[r * cols + c] = static_cast<unsigned char>(v);
      }
    }
  }
  return images;
}

}  // namespace oracle
