// Command-line entry point binding the library into reproducible experiment
// runs and figure-data emission.
//
// Exit codes: 0 success, 2 verification failure, 3 training divergence,
// 4 I/O or format error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "agan/errors.hpp"
#include "agan/format.hpp"
#include "agan/gradients.hpp"
#include "agan/metrics.hpp"
#include "agan/rng.hpp"
#include "agan/saddle.hpp"
#include "agan/train.hpp"
#include "agan/value_function.hpp"

namespace fs = std::filesystem;
using namespace agan;

namespace {

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIoError = 4;

std::string default_out_root() {
  const char* env = std::getenv("AGAN_OUT");
  return env != nullptr && *env != '\0' ? env : "agan_out";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot open for writing: " + path.string());
  }
  out << content;
  if (!out) {
    throw FormatError("write failed: " + path.string());
  }
}

std::string iso_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Written before any computation so partial runs stay attributable.
void write_manifest(const fs::path& out_dir, const std::string& subcommand,
                    std::uint64_t seed,
                    const std::map<std::string, std::string>& resolved) {
  fs::create_directories(out_dir);
  std::ostringstream m;
  m << "tool=agan\n";
  m << "version=" << kToolVersion << '\n';
  m << "subcommand=" << subcommand << '\n';
  m << "seed=" << seed << '\n';
  m << "out_dir=" << out_dir.string() << '\n';
  m << "start_time=" << iso_now() << '\n';
  for (const auto& [key, value] : resolved) {
    m << key << '=' << value << '\n';
  }
  write_file(out_dir / "manifest.txt", m.str());
}

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) {
    throw FormatError("empty numeric list: " + spec);
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& spec) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  if (out.empty()) {
    throw FormatError("empty seed list: " + spec);
  }
  return out;
}

// "lo:hi:count" linspace or a plain comma list.
std::vector<AlphaOrder> parse_alpha_grid(const std::string& spec) {
  std::vector<AlphaOrder> out;
  if (spec.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' ||
        count < 1) {
      throw FormatError("bad alpha grid spec: " + spec);
    }
    for (int k = 0; k < count; ++k) {
      const double a = count == 1
                           ? lo
                           : lo + (hi - lo) * static_cast<double>(k) /
                                 static_cast<double>(count - 1);
      out.push_back(AlphaOrder(a));
    }
    return out;
  }
  for (double a : parse_double_list(spec)) {
    out.push_back(AlphaOrder(a));
  }
  return out;
}

// Flat key=value config file; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open config file: " + path);
  }
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(lineno) +
                        " is not key=value");
    }
    kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return kv;
}

std::vector<double> dirichlet(SeededRng& rng, std::size_t n) {
  std::vector<double> mass(n);
  for (double& m : mass) {
    double u = rng.uniform();
    while (u == 0.0) u = rng.uniform();
    m = -std::log(u);
  }
  return FiniteDistribution::normalized(std::move(mass)).probs();
}

std::vector<double> floored_dirichlet(SeededRng& rng, std::size_t n,
                                      double floor) {
  std::vector<double> p = dirichlet(rng, n);
  for (double& v : p) v = std::max(v, floor);
  return FiniteDistribution::normalized(std::move(p)).probs();
}

double total_variation(const FiniteDistribution& a,
                       const FiniteDistribution& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::fabs(a[i] - b[i]);
  }
  return 0.5 * acc;
}

// ---------------------------------------------------------------------------
// verify-saddle

struct VerifySaddleOptions {
  int alphabet = 3;
  std::string alphas = "0.1,0.5,1,2,5";
  int trials = 20;
  int grid = 10001;
  std::uint64_t seed = 7;
  std::string fixture = "random";
  int pgd_steps = 20000;
  double pgd_step_size = 0.02;
  std::string out;
};

int run_verify_saddle(const VerifySaddleOptions& opt) {
  if (opt.alphabet < 2 || opt.alphabet > 8) {
    std::cerr << "alphabet size must lie in [2, 8] for brute-force trials\n";
    return kExitIoError;
  }
  const fs::path out_dir(opt.out);
  write_manifest(out_dir, "verify-saddle", opt.seed,
                 {{"alphabet", std::to_string(opt.alphabet)},
                  {"alphas", opt.alphas},
                  {"trials", std::to_string(opt.trials)},
                  {"grid", std::to_string(opt.grid)},
                  {"fixture", opt.fixture},
                  {"pgd_steps", std::to_string(opt.pgd_steps)},
                  {"pgd_step_size", format_g17(opt.pgd_step_size)}});

  const std::vector<AlphaOrder> alphas = parse_alpha_grid(opt.alphas);
  const double coord_tol = 2.0 / static_cast<double>(opt.grid);
  constexpr double kValueTol = 1e-6;
  constexpr double kSaddleTol = 1e-12;
  constexpr double kGenValueTol = 1e-4;
  constexpr double kGenTvTol = 1e-3;

  SeededRng rng(opt.seed);
  std::ostringstream csv;
  csv << "trial,alpha,alphabet_size,coord_err,value,arimoto_gap,"
         "gen_value_gap,gen_tv,pass\n";

  bool all_pass = true;
  bool scan_written = false;
  const std::size_t n = static_cast<std::size_t>(opt.alphabet);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const FiniteGanInstance inst =
        random_verification_instance(rng, n, opt.fixture == "equal");
    const FiniteDistribution& pr = inst.real();
    const FiniteDistribution& pg = inst.generated();
    const FiniteDistribution start(floored_dirichlet(rng, n, 0.02));

    if (!scan_written) {
      // monotonicity scan of D* for the first instance, ascending grid
      std::vector<AlphaOrder> sorted = alphas;
      std::sort(sorted.begin(), sorted.end(),
                [](const AlphaOrder& a, const AlphaOrder& b) {
                  return a.value() < b.value();
                });
      write_file(out_dir / "dstar_scan.csv",
                 dstar_scan_to_csv(dstar_monotonicity_scan(inst, sorted)));
      scan_written = true;
    }

    for (const AlphaOrder& alpha : alphas) {
      const SoftDecision closed = closed_form_discriminator(alpha, inst);
      const GridSearchResult brute =
          brute_force_max_discriminator(alpha, inst, opt.grid);
      double coord_err = 0.0;
      for (std::size_t i = 0; i < closed.size(); ++i) {
        coord_err = std::max(coord_err, std::fabs(closed[i] - brute.argmax[i]));
      }
      const double opt_value = optimal_value(alpha, inst);
      const double arimoto = -arimoto_conditional_entropy(alpha, inst.weights());
      const double arimoto_gap = std::fabs(brute.value - arimoto);

      const GeneratorDescentResult descent = minimize_generator(
          alpha, pr, start, opt.pgd_steps, opt.pgd_step_size);
      const double gen_value_gap = std::fabs(descent.value + std::log(2.0));
      const double gen_tv = total_variation(descent.generated, pr);

      bool pass = coord_err <= coord_tol && arimoto_gap <= kValueTol &&
                  brute.value <= opt_value + kValueTol;
      if (opt.fixture == "equal") {
        pass = pass && std::fabs(brute.value + std::log(2.0)) <= kSaddleTol;
      }
      if (alpha.value() >= 1.0) {
        pass = pass && gen_value_gap <= kGenValueTol && gen_tv <= kGenTvTol;
      }
      if (!pass) {
        all_pass = false;
        std::cerr << "verify-saddle failure: trial " << trial << " alpha "
                  << format_g17(alpha.value()) << " pr=[";
        for (std::size_t i = 0; i < pr.size(); ++i) {
          std::cerr << (i ? "," : "") << format_g17(pr[i]);
        }
        std::cerr << "] pg=[";
        for (std::size_t i = 0; i < pg.size(); ++i) {
          std::cerr << (i ? "," : "") << format_g17(pg[i]);
        }
        std::cerr << "] coord_err=" << format_g17(coord_err)
                  << " arimoto_gap=" << format_g17(arimoto_gap)
                  << " gen_value_gap=" << format_g17(gen_value_gap)
                  << " gen_tv=" << format_g17(gen_tv) << '\n';
      }
      csv << trial << ',' << format_g17(alpha.value()) << ',' << n << ','
          << format_g17(coord_err) << ',' << format_g17(brute.value) << ','
          << format_g17(arimoto_gap) << ',' << format_g17(gen_value_gap) << ','
          << format_g17(gen_tv) << ',' << (pass ? 1 : 0) << '\n';
    }
  }
  write_file(out_dir / "saddle_report.csv", csv.str());
  return all_pass ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// sweep-gradients

struct SweepOptions {
  std::string scenarios_file;
  std::string alpha_grid = "0.01:99.01:100";
  bool raw = false;
  std::uint64_t seed = 0;
  std::string out;
};

std::vector<GradScenario> read_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open scenario file: " + path);
  }
  std::vector<GradScenario> scenarios;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    GradScenario sc{};
    char c1 = 0, c2 = 0;
    std::istringstream ss(line);
    if (!(ss >> sc.pr >> c1 >> sc.pg >> c2 >> sc.d) || c1 != ',' || c2 != ',') {
      throw FormatError("malformed scenario at line " + std::to_string(lineno) +
                        " (expected pr,pg,d)");
    }
    scenarios.push_back(sc);
  }
  if (scenarios.empty()) {
    throw FormatError("scenario file has no rows: " + path);
  }
  return scenarios;
}

int run_sweep_gradients(const SweepOptions& opt) {
  const fs::path out_dir(opt.out);
  write_manifest(out_dir, "sweep-gradients", opt.seed,
                 {{"scenarios", opt.scenarios_file.empty() ? "(builtin)"
                                                           : opt.scenarios_file},
                  {"alpha_grid", opt.alpha_grid},
                  {"normalize_generator", opt.raw ? "0" : "1"}});

  const std::vector<GradScenario> scenarios =
      opt.scenarios_file.empty() ? reference_sweep_scenarios()
                                 : read_scenarios(opt.scenarios_file);
  const std::vector<AlphaOrder> alphas = parse_alpha_grid(opt.alpha_grid);
  const auto rows = sweep_alpha(scenarios, alphas, !opt.raw);
  write_file(out_dir / "gradient_sweep.csv", sweep_to_csv(rows));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainOptions {
  std::string config_file;
  double alpha = 1.0;
  int epochs = 10000;
  std::uint64_t seed = 1;
  int batch_size = 128;
  int latent_dim = 5;
  double learning_rate = 2e-4;
  std::string optimizer;  // default: sgd for gaussian, adam for mnist
  int d_steps = 1;
  std::string data = "gaussian";
  double mean = 0.0;
  double stddev = 1.0;
  std::string mnist_path;
  int max_images = 512;
  int hidden_width = -1;  // -1: 32 for gaussian, 128 for mnist
  int record_interval = 100;
  int histogram_interval = 1000;
  int metrics_samples = 1024;
  std::string out;
};

// sgd is the 1D-Gaussian default; the MNIST runs default to adam
void resolve_train_defaults(TrainOptions& opt) {
  if (opt.optimizer.empty()) {
    opt.optimizer = opt.data == "mnist" ? "adam" : "sgd";
  }
  if (opt.hidden_width <= 0) {
    opt.hidden_width = opt.data == "mnist" ? 128 : 32;
  }
}

TrainConfig to_train_config(const TrainOptions& opt) {
  TrainConfig config;
  config.alpha = AlphaOrder(opt.alpha);
  config.epochs = opt.epochs;
  config.seed = opt.seed;
  config.batch_size = opt.batch_size;
  config.latent_dim = opt.latent_dim;
  config.learning_rate = opt.learning_rate;
  config.d_steps_per_g_step = opt.d_steps;
  config.record_interval = opt.record_interval;
  config.histogram_interval = opt.histogram_interval;
  config.metrics_sample_size = opt.metrics_samples;
  if (opt.optimizer == "adam") {
    config.optimizer = OptimizerKind::Adam;
  } else if (opt.optimizer == "sgd") {
    config.optimizer = OptimizerKind::SGD;
  } else {
    throw FormatError("unknown optimizer: " + opt.optimizer);
  }
  config.hidden_width = opt.hidden_width;
  if (opt.data == "gaussian") {
    config.data_source = Gaussian1D{opt.mean, opt.stddev};
  } else if (opt.data == "mnist") {
    config.data_source = MnistSubset{
        opt.mnist_path, static_cast<std::size_t>(opt.max_images)};
  } else {
    throw FormatError("unknown data source: " + opt.data);
  }
  return config;
}

std::map<std::string, std::string> train_manifest_entries(
    const TrainOptions& opt) {
  return {{"alpha", format_g17(opt.alpha)},
          {"epochs", std::to_string(opt.epochs)},
          {"batch_size", std::to_string(opt.batch_size)},
          {"latent_dim", std::to_string(opt.latent_dim)},
          {"learning_rate", format_g17(opt.learning_rate)},
          {"optimizer", opt.optimizer},
          {"d_steps_per_g_step", std::to_string(opt.d_steps)},
          {"data", opt.data},
          {"mean", format_g17(opt.mean)},
          {"std", format_g17(opt.stddev)},
          {"mnist_path", opt.mnist_path},
          {"max_images", std::to_string(opt.max_images)},
          {"hidden_width", std::to_string(opt.hidden_width)},
          {"record_interval", std::to_string(opt.record_interval)},
          {"histogram_interval", std::to_string(opt.histogram_interval)},
          {"metrics_samples", std::to_string(opt.metrics_samples)}};
}

int run_train(TrainOptions opt) {
  resolve_train_defaults(opt);
  const fs::path out_dir(opt.out);
  write_manifest(out_dir, "train", opt.seed, train_manifest_entries(opt));

  const TrainConfig config = to_train_config(opt);
  const TrainResult result = train(config);

  write_file(out_dir / "metrics.csv", metrics_to_csv(result.metrics));
  for (const HistogramSnapshot& snap : result.histograms) {
    write_file(out_dir / ("hist_epoch" + std::to_string(snap.epoch) + ".csv"),
               histogram_to_csv(snap.rows));
  }
  save_checkpoint((out_dir / "d.ckpt").string(), result.discriminator);
  save_checkpoint((out_dir / "g.ckpt").string(), result.generator);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare-alphas

struct CompareOptions {
  std::string alphas = "0.1,1";
  std::string seeds = "1,2,3,4,5,6,7,8,9,10";
  int epochs = 4000;
  int at_epoch = -1;  // defaults to epochs
  int threads = 0;    // 0: hardware concurrency
  TrainOptions base;  // shared hyperparameters
};

int run_compare_alphas(CompareOptions opt) {
  resolve_train_defaults(opt.base);
  const fs::path out_dir(opt.base.out);
  const int at_epoch = opt.at_epoch > 0 ? opt.at_epoch : opt.epochs;
  auto manifest = train_manifest_entries(opt.base);
  manifest["alphas"] = opt.alphas;
  manifest["seeds"] = opt.seeds;
  manifest["epochs"] = std::to_string(opt.epochs);
  manifest["at_epoch"] = std::to_string(at_epoch);
  write_manifest(out_dir, "compare-alphas", opt.base.seed, manifest);

  const std::vector<double> alphas = parse_double_list(opt.alphas);
  const std::vector<std::uint64_t> seeds = parse_seed_list(opt.seeds);
  if (at_epoch != 0 && at_epoch % opt.base.record_interval != 0) {
    std::cerr << "at-epoch must be a recorded epoch (multiple of "
              << opt.base.record_interval << ")\n";
    return kExitIoError;
  }

  struct Job {
    double alpha;
    std::uint64_t seed;
    fs::path dir;
    double w1 = std::numeric_limits<double>::quiet_NaN();
    std::string error;
  };
  std::vector<Job> jobs;
  for (double a : alphas) {
    for (std::uint64_t s : seeds) {
      std::ostringstream name;
      name << "alpha_" << format_g17(a) << "_seed_" << s;
      jobs.push_back({a, s, out_dir / name.str(), 0.0, ""});
    }
  }

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= jobs.size()) break;
      Job& job = jobs[k];
      try {
        TrainOptions run = opt.base;
        run.alpha = job.alpha;
        run.seed = job.seed;
        run.epochs = opt.epochs;
        TrainConfig config = to_train_config(run);
        const TrainResult result = train(config);
        fs::create_directories(job.dir);
        write_file(job.dir / "metrics.csv", metrics_to_csv(result.metrics));
        for (const MetricsRecord& rec : result.metrics) {
          if (rec.epoch == at_epoch) job.w1 = rec.wasserstein1;
        }
      } catch (const std::exception& e) {
        job.error = e.what();
      }
    }
  };

  unsigned thread_count = opt.threads > 0
                              ? static_cast<unsigned>(opt.threads)
                              : std::max(1u, std::thread::hardware_concurrency());
  thread_count = std::min<unsigned>(thread_count, static_cast<unsigned>(jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  for (const Job& job : jobs) {
    if (!job.error.empty()) {
      std::cerr << "run alpha=" << format_g17(job.alpha)
                << " seed=" << job.seed << " failed: " << job.error << '\n';
      return kExitDivergence;
    }
  }

  std::ostringstream summary;
  summary << "alpha,seed,epoch,wasserstein1\n";
  for (const Job& job : jobs) {
    summary << format_g17(job.alpha) << ',' << job.seed << ',' << at_epoch
            << ',' << format_g17(job.w1) << '\n';
  }
  write_file(out_dir / "summary.csv", summary.str());

  const bool has_baseline =
      std::find(alphas.begin(), alphas.end(), 1.0) != alphas.end();
  if (has_baseline) {
    std::ostringstream winrate;
    winrate << "alpha,wins,trials,win_rate\n";
    for (double a : alphas) {
      if (a == 1.0) continue;
      int wins = 0;
      for (std::uint64_t s : seeds) {
        double w1_a = 0.0, w1_base = 0.0;
        for (const Job& job : jobs) {
          if (job.seed != s) continue;
          if (job.alpha == a) w1_a = job.w1;
          if (job.alpha == 1.0) w1_base = job.w1;
        }
        if (w1_a < w1_base) ++wins;
      }
      const double rate = static_cast<double>(wins) /
                          static_cast<double>(seeds.size());
      winrate << format_g17(a) << ',' << wins << ',' << seeds.size() << ','
              << format_g17(rate) << '\n';
      std::cout << "win-rate of alpha=" << format_g17(a)
                << " against alpha=1: " << format_g17(rate) << '\n';
    }
    write_file(out_dir / "winrate.csv", winrate.str());
  }
  return kExitOk;
}

// Applies config-file values for options the user did not pass on the
// command line; flags win.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  const auto kv = read_config_file(path);
  for (const auto& [key, value] : kv) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* option = cmd->get_option_no_throw("--" + flag);
    if (option == nullptr) {
      throw FormatError("unknown config key: " + key);
    }
    if (option->count() > 0) continue;  // flags win
    option->add_result(value);
    option->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-GAN laboratory: saddle verification, gradient sweeps "
               "and 1D-Gaussian / MNIST training runs"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  VerifySaddleOptions vs;
  CLI::App* verify = app.add_subcommand(
      "verify-saddle", "closed-form vs brute-force discriminator agreement "
                       "and generator descent trials");
  verify->add_option("--alphabet", vs.alphabet, "alphabet size (2..8)");
  verify->add_option("--alphas", vs.alphas, "comma list of Renyi orders");
  verify->add_option("--trials", vs.trials, "number of random instances");
  verify->add_option("--grid", vs.grid, "grid points per coordinate");
  verify->add_option("--seed", vs.seed, "RNG seed");
  verify->add_option("--fixture", vs.fixture, "random | equal (pg = pr)");
  verify->add_option("--pgd-steps", vs.pgd_steps, "generator descent steps");
  verify->add_option("--pgd-step-size", vs.pgd_step_size,
                     "generator descent step size");
  verify->add_option("--out", vs.out, "output directory");

  SweepOptions sw;
  CLI::App* sweep = app.add_subcommand(
      "sweep-gradients", "emit discriminator/generator gradient families "
                         "over an alpha grid");
  sweep->add_option("--scenarios", sw.scenarios_file,
                    "CSV file of pr,pg,d rows (default: built-in scenarios)");
  sweep->add_option("--alpha-grid", sw.alpha_grid,
                    "comma list or lo:hi:count linspace");
  sweep->add_flag("--raw", sw.raw, "disable generator-family normalization");
  sweep->add_option("--out", sw.out, "output directory");

  TrainOptions tr;
  CLI::App* train_cmd =
      app.add_subcommand("train", "run one alpha-GAN training experiment");
  train_cmd->add_option("--config", tr.config_file,
                        "key=value config file (flags win)");
  train_cmd->add_option("--alpha", tr.alpha, "Renyi order");
  train_cmd->add_option("--epochs", tr.epochs, "training epochs");
  train_cmd->add_option("--seed", tr.seed, "RNG seed");
  train_cmd->add_option("--batch-size", tr.batch_size, "minibatch size");
  train_cmd->add_option("--latent-dim", tr.latent_dim, "latent dimension");
  train_cmd->add_option("--learning-rate", tr.learning_rate, "learning rate");
  train_cmd->add_option("--optimizer", tr.optimizer, "sgd | adam");
  train_cmd->add_option("--d-steps", tr.d_steps,
                        "discriminator steps per generator step");
  train_cmd->add_option("--data", tr.data, "gaussian | mnist");
  train_cmd->add_option("--mean", tr.mean, "Gaussian mean");
  train_cmd->add_option("--std", tr.stddev, "Gaussian standard deviation");
  train_cmd->add_option("--mnist-path", tr.mnist_path, "IDX image file");
  train_cmd->add_option("--max-images", tr.max_images, "MNIST subset size");
  train_cmd->add_option("--hidden-width", tr.hidden_width,
                        "hidden layer width (default 32, 128 for MNIST)");
  train_cmd->add_option("--record-interval", tr.record_interval,
                        "epochs between metric records");
  train_cmd->add_option("--histogram-interval", tr.histogram_interval,
                        "epochs between histogram snapshots");
  train_cmd->add_option("--metrics-samples", tr.metrics_samples,
                        "evaluation sample size");
  train_cmd->add_option("--out", tr.out, "output directory");

  CompareOptions cp;
  CLI::App* compare = app.add_subcommand(
      "compare-alphas", "multi-seed Wasserstein comparison against alpha=1");
  compare->add_option("--alphas", cp.alphas, "comma list of Renyi orders");
  compare->add_option("--seeds", cp.seeds, "comma list of seeds");
  compare->add_option("--epochs", cp.epochs, "training epochs per run");
  compare->add_option("--at-epoch", cp.at_epoch,
                      "epoch at which Wasserstein-1 is compared");
  compare->add_option("--threads", cp.threads, "worker threads (0: auto)");
  compare->add_option("--batch-size", cp.base.batch_size, "minibatch size");
  compare->add_option("--latent-dim", cp.base.latent_dim, "latent dimension");
  compare->add_option("--learning-rate", cp.base.learning_rate,
                      "learning rate");
  compare->add_option("--optimizer", cp.base.optimizer, "sgd | adam");
  compare->add_option("--d-steps", cp.base.d_steps,
                      "discriminator steps per generator step");
  compare->add_option("--hidden-width", cp.base.hidden_width,
                      "hidden layer width");
  compare->add_option("--record-interval", cp.base.record_interval,
                      "epochs between metric records");
  compare->add_option("--metrics-samples", cp.base.metrics_samples,
                      "evaluation sample size");
  compare->add_option("--out", cp.base.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      if (vs.out.empty()) vs.out = default_out_root();
      return run_verify_saddle(vs);
    }
    if (sweep->parsed()) {
      if (sw.out.empty()) sw.out = default_out_root();
      return run_sweep_gradients(sw);
    }
    if (train_cmd->parsed()) {
      if (!tr.config_file.empty()) apply_config_file(train_cmd, tr.config_file);
      if (tr.out.empty()) tr.out = default_out_root();
      return run_train(tr);
    }
    if (compare->parsed()) {
      if (cp.base.out.empty()) cp.base.out = default_out_root();
      return run_compare_alphas(cp);
    }
  } catch (const TrainingDivergenceError& e) {
    std::cerr << e.what() << '\n';
    return kExitDivergence;
  } catch (const FormatError& e) {
    std::cerr << e.what() << '\n';
    return kExitIoError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << e.what() << '\n';
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitIoError;
  }
  return kExitOk;
}
