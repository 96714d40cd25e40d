#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"

#include "agan/errors.hpp"
#include "agan/train.hpp"
#include "support/oracles.hpp"

using namespace agan;

namespace {

std::vector<double> random_decisions(SeededRng& rng, std::size_t n) {
  std::vector<double> d(n);
  for (double& v : d) v = rng.uniform(0.05, 0.95);
  return d;
}

}  // namespace

TEST_CASE("minibatch loss at alpha=1 on flat decisions is -log 2") {
  const std::vector<double> half(8, 0.5);
  const ValueLoss loss = empirical_value_loss(AlphaOrder(1.0), half, half);
  CHECK(loss.loss == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
  // BCE derivative: 1/(N d) on the real branch, -1/(N (1-d)) on the fake one
  for (double g : loss.grad_real) {
    CHECK(g == doctest::Approx(1.0 / (16.0 * 0.5)).epsilon(1e-14));
  }
  for (double g : loss.grad_fake) {
    CHECK(g == doctest::Approx(-1.0 / (16.0 * 0.5)).epsilon(1e-14));
  }
}

TEST_CASE("minibatch loss approaches zero under a certain discriminator") {
  const std::vector<double> sure_real(6, 1.0 - 1e-6);
  const std::vector<double> sure_fake(6, 1e-6);
  for (double a : {0.3, 1.0, 2.0, 20.0}) {
    CHECK(std::fabs(empirical_value_loss(AlphaOrder(a), sure_real, sure_fake)
                        .loss) < 1e-4);
  }
}

TEST_CASE("minibatch loss gradients match central finite differences") {
  SeededRng rng(61);
  for (double a : {0.3, 2.0, 5.0}) {
    const AlphaOrder alpha(a);
    std::vector<double> d_real = random_decisions(rng, 6);
    std::vector<double> d_fake = random_decisions(rng, 6);
    const ValueLoss analytic = empirical_value_loss(alpha, d_real, d_fake);
    const double h = 1e-7;
    for (std::size_t i = 0; i < d_real.size(); ++i) {
      auto up = d_real, down = d_real;
      up[i] += h;
      down[i] -= h;
      const double fd = (empirical_value_loss(alpha, up, d_fake).loss -
                         empirical_value_loss(alpha, down, d_fake).loss) /
                        (2.0 * h);
      CHECK(analytic.grad_real[i] == doctest::Approx(fd).epsilon(1e-5));
    }
    for (std::size_t j = 0; j < d_fake.size(); ++j) {
      auto up = d_fake, down = d_fake;
      up[j] += h;
      down[j] -= h;
      const double fd = (empirical_value_loss(alpha, d_real, up).loss -
                         empirical_value_loss(alpha, d_real, down).loss) /
                        (2.0 * h);
      CHECK(analytic.grad_fake[j] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("minibatch loss near alpha=1 equals independently coded BCE") {
  SeededRng rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> d_real = random_decisions(rng, 16);
    const std::vector<double> d_fake = random_decisions(rng, 16);
    const double ours =
        empirical_value_loss(AlphaOrder(1.0 + 1e-7), d_real, d_fake).loss;
    const double theirs = oracle::minibatch_bce(d_real, d_fake);
    CHECK(ours == doctest::Approx(theirs).epsilon(1e-9));
  }
}

TEST_CASE("minibatch loss rejects empty batches and order zero") {
  CHECK_THROWS_AS(empirical_value_loss(AlphaOrder(1.0), {}, {0.5}),
                  DimensionError);
  CHECK_THROWS_AS(empirical_value_loss(AlphaOrder(0.0), {0.5}, {0.5}),
                  UnsupportedOrderError);
}

TEST_CASE("a constant-1/2 discriminator sends zero gradient to the generator") {
  // D with zero weights outputs exactly 0.5 everywhere and, being constant,
  // carries no input gradient: the generator update is exactly zero.
  SeededRng rng(63);
  MlpNetwork g = MlpNetwork::dense(
      {3, 8, 1}, {Activation::ReLU, Activation::Identity}, rng);
  MlpNetwork d = MlpNetwork::dense(
      {1, 8, 1}, {Activation::ReLU, Activation::Sigmoid}, rng);
  for (auto& layer : d.layers()) {
    for (double& w : layer.weights.data) w = 0.0;
    for (double& b : layer.biases) b = 0.0;
  }

  const std::size_t B = 16;
  Matrix real(B, 1), z(B, 3);
  for (double& v : real.data) v = rng.normal();
  for (double& v : z.data) v = rng.normal();
  Matrix fake = g.forward(z);
  Matrix combined(2 * B, 1);
  for (std::size_t i = 0; i < B; ++i) {
    combined(i, 0) = real(i, 0);
    combined(B + i, 0) = fake(i, 0);
  }
  Matrix out = d.forward(combined);
  std::vector<double> dr(B), df(B);
  for (std::size_t i = 0; i < B; ++i) {
    dr[i] = out(i, 0);
    df[i] = out(B + i, 0);
    CHECK(out(i, 0) == 0.5);
  }
  for (double a : {0.1, 1.0, 5.0}) {
    const ValueLoss loss = empirical_value_loss(AlphaOrder(a), dr, df);
    Matrix upstream(2 * B, 1);
    for (std::size_t j = 0; j < B; ++j) {
      upstream(B + j, 0) = loss.grad_fake[j];
    }
    const auto d_bw = d.backward(upstream);
    Matrix g_upstream(B, 1);
    for (std::size_t j = 0; j < B; ++j) {
      g_upstream(j, 0) = d_bw.input(B + j, 0);
      CHECK(g_upstream(j, 0) == 0.0);
    }
    const auto g_bw = g.backward(g_upstream);
    for (const LayerGradients& lg : g_bw.params) {
      for (double v : lg.weights.data) CHECK(v == 0.0);
      for (double v : lg.biases) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("training is deterministic given the seed") {
  TrainConfig cfg;
  cfg.alpha = AlphaOrder(0.5);
  cfg.epochs = 120;
  cfg.record_interval = 40;
  cfg.seed = 7;
  const TrainResult a = train(cfg);
  const TrainResult b = train(cfg);
  CHECK(metrics_to_csv(a.metrics) == metrics_to_csv(b.metrics));
  REQUIRE(a.metrics.size() == b.metrics.size());
  for (std::size_t li = 0; li < a.generator.layers().size(); ++li) {
    CHECK(a.generator.layers()[li].weights.data ==
          b.generator.layers()[li].weights.data);
  }
}

TEST_CASE("a one-epoch run records exactly the pre-training row") {
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.seed = 1;
  const TrainResult r = train(cfg);
  REQUIRE(r.metrics.size() == 1);
  CHECK(r.metrics[0].epoch == 0);
  CHECK(r.metrics[0].wasserstein1 > 0.0);
  CHECK(r.metrics[0].d_flatness >= 0.0);
  CHECK(r.metrics[0].d_flatness <= 0.5 + 1e-9);
  CHECK(r.metrics[0].ks_stat >= 0.0);
  CHECK(r.metrics[0].ks_stat <= 1.0);
}

TEST_CASE("metrics records land on the recording grid") {
  TrainConfig cfg;
  cfg.epochs = 250;
  cfg.record_interval = 100;
  cfg.histogram_interval = 200;
  cfg.seed = 3;
  const TrainResult r = train(cfg);
  REQUIRE(r.metrics.size() == 3);  // epochs 0, 100, 200
  CHECK(r.metrics[0].epoch == 0);
  CHECK(r.metrics[1].epoch == 100);
  CHECK(r.metrics[2].epoch == 200);
  REQUIRE(r.histograms.size() == 2);  // epochs 0 and 200
  CHECK(r.histograms[0].epoch == 0);
  CHECK(r.histograms[1].epoch == 200);
  CHECK(r.histograms[0].rows.size() == 30);
}

TEST_CASE("discriminator gradient norms order by alpha at a spread state") {
  // random state with the discriminator weights scaled so its outputs cover
  // most of (0,1); at outputs pinned to 0.5 the norms are alpha-invariant
  SeededRng rng(1);
  MlpNetwork g = MlpNetwork::dense(
      {5, 32, 1}, {Activation::ReLU, Activation::Identity}, rng);
  MlpNetwork d = MlpNetwork::dense(
      {1, 32, 1}, {Activation::ReLU, Activation::Sigmoid}, rng);
  for (auto& layer : d.layers()) {
    for (double& w : layer.weights.data) w *= 4.0;
  }
  const std::size_t B = 128;
  SeededRng batch_rng = rng.fork(9);
  Matrix real(B, 1), z(B, 5);
  for (double& v : real.data) v = batch_rng.normal();
  for (double& v : z.data) v = batch_rng.normal();
  Matrix fake = g.forward(z);
  Matrix combined(2 * B, 1);
  for (std::size_t i = 0; i < B; ++i) {
    combined(i, 0) = real(i, 0);
    combined(B + i, 0) = fake(i, 0);
  }

  auto norm_at = [&](double alpha_v) {
    Matrix out = d.forward(combined);
    std::vector<double> dr(B), df(B);
    for (std::size_t i = 0; i < B; ++i) {
      dr[i] = out(i, 0);
      df[i] = out(B + i, 0);
    }
    const ValueLoss loss = empirical_value_loss(AlphaOrder(alpha_v), dr, df);
    Matrix upstream(2 * B, 1);
    for (std::size_t i = 0; i < B; ++i) {
      upstream(i, 0) = -loss.grad_real[i];
      upstream(B + i, 0) = -loss.grad_fake[i];
    }
    const auto bw = d.backward(upstream);
    double nn = 0.0;
    for (const LayerGradients& lg : bw.params) {
      for (double v : lg.weights.data) nn += v * v;
      for (double v : lg.biases) nn += v * v;
    }
    return std::sqrt(nn);
  };
  const double n01 = norm_at(0.1);
  const double n1 = norm_at(1.0);
  const double n5 = norm_at(5.0);
  CHECK(n01 > n1);
  CHECK(n1 > n5);
}

TEST_CASE("an exploding configuration aborts with a divergence error") {
  TrainConfig cfg;
  cfg.alpha = AlphaOrder(2.0);
  cfg.epochs = 50;
  cfg.learning_rate = 1e18;
  cfg.seed = 5;
  try {
    train(cfg);
    FAIL("expected TrainingDivergenceError");
  } catch (const TrainingDivergenceError& e) {
    CHECK(e.epoch >= 1);
    CHECK(e.alpha == 2.0);
    CHECK(std::string(e.what()).find("epoch") != std::string::npos);
  }
}

TEST_CASE("config validation rejects out-of-range fields") {
  TrainConfig cfg;
  cfg.batch_size = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidInstanceError);
  cfg.batch_size = 2;
  cfg.epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInstanceError);
  cfg.epochs = 1;
  cfg.alpha = AlphaOrder(0.0);
  CHECK_THROWS_AS(cfg.validate(), UnsupportedOrderError);
}

TEST_CASE("a tiny MNIST subset trains with finite losses") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "agan_train_idx";
  fs::create_directories(dir);
  const std::string path = (dir / "train.idx").string();
  oracle::write_idx_images(path, 0x00000803,
                           oracle::synthetic_digit_images(5, 64, 28, 28), 28,
                           28);
  TrainConfig cfg;
  cfg.alpha = AlphaOrder(1.0);
  cfg.data_source = MnistSubset{path, 64};
  cfg.batch_size = 16;
  cfg.latent_dim = 8;
  cfg.hidden_width = 32;
  cfg.epochs = 2;
  cfg.record_interval = 1;
  cfg.optimizer = OptimizerKind::Adam;
  const TrainResult r = train(cfg);
  REQUIRE(r.metrics.size() == 3);
  for (const MetricsRecord& m : r.metrics) {
    CHECK(std::isfinite(m.d_loss));
    CHECK(std::isfinite(m.g_loss));
    CHECK(std::isfinite(m.wasserstein1));
  }
}
