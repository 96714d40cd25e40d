#include <benchmark/benchmark.h>

#include "agan/gradients.hpp"
#include "agan/rng.hpp"
#include "agan/saddle.hpp"
#include "agan/train.hpp"
#include "agan/value_function.hpp"

using namespace agan;

namespace {

PairedSampleWeights random_weights(SeededRng& rng, std::size_t n) {
  std::vector<double> pr(n), pg(n);
  for (std::size_t i = 0; i < n; ++i) {
    pr[i] = rng.uniform(0.05, 1.0);
    pg[i] = rng.uniform(0.05, 1.0);
  }
  return {pr, pg};
}

SoftDecision random_decisions(SeededRng& rng, std::size_t n) {
  std::vector<double> d(n);
  for (double& v : d) v = rng.uniform(0.05, 0.95);
  return SoftDecision(d);
}

}  // namespace

static void ValueFunction(benchmark::State& state) {
  SeededRng rng(1);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PairedSampleWeights w = random_weights(rng, n);
  const SoftDecision d = random_decisions(rng, n);
  const AlphaOrder alpha(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_function(alpha, w, d));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ValueFunction)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BruteForceGrid(benchmark::State& state) {
  SeededRng rng(2);
  const FiniteGanInstance inst = random_verification_instance(rng, 4);
  const AlphaOrder alpha(2.0);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        brute_force_max_discriminator(alpha, inst, grid));
  }
}
BENCHMARK(BruteForceGrid)->Arg(1001)->Arg(10001);

static void MinibatchLoss(benchmark::State& state) {
  SeededRng rng(3);
  std::vector<double> dr(128), df(128);
  for (double& v : dr) v = rng.uniform(0.05, 0.95);
  for (double& v : df) v = rng.uniform(0.05, 0.95);
  const AlphaOrder alpha(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_value_loss(alpha, dr, df));
  }
}
BENCHMARK(MinibatchLoss);

static void TrainEpochs(benchmark::State& state) {
  for (auto _ : state) {
    TrainConfig cfg;
    cfg.alpha = AlphaOrder(0.1);
    cfg.epochs = static_cast<int>(state.range(0));
    cfg.seed = 4;
    cfg.record_interval = 1 << 20;  // metrics off the hot path
    cfg.histogram_interval = 1 << 20;
    benchmark::DoNotOptimize(train(cfg));
  }
}
BENCHMARK(TrainEpochs)->Arg(50)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
