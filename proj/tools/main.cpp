// Experiment runner: loads a profile, applies flag overrides, samples, and
// prints the run report as JSON on stdout.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ptbnn/errors.hpp"
#include "ptbnn/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Parallel-tempering MCMC for Bayesian neural networks"};

  std::string config_path;
  app.add_option("--config", config_path, "profile file (key=value lines)")
      ->required();

  std::string method;
  std::uint64_t samples = 0, replicas = 0, swap_interval = 0, seed = 0;
  double max_temp = 0, lg_freq = 0, learn_rate = 0;
  std::string out_dir;
  bool sequential = false;
  auto* opt_method = app.add_option("--method", method, "PT-RW or PT-LG");
  auto* opt_samples =
      app.add_option("--samples", samples, "total samples across replicas");
  auto* opt_replicas = app.add_option("--replicas", replicas, "replica count");
  auto* opt_swap = app.add_option("--swap-interval", swap_interval,
                                  "steps between swap attempts");
  auto* opt_max_temp =
      app.add_option("--max-temp", max_temp, "hottest ladder temperature");
  auto* opt_lg_freq =
      app.add_option("--lg-freq", lg_freq, "Langevin step probability");
  auto* opt_learn_rate =
      app.add_option("--learn-rate", learn_rate, "Langevin drift step");
  auto* opt_seed = app.add_option("--seed", seed, "master RNG seed");
  auto* opt_out = app.add_option("--out", out_dir,
                                 "directory for report, chain, and trace files");
  app.add_flag("--sequential", sequential,
               "advance replicas on one thread (reference mode)");

  CLI11_PARSE(app, argc, argv);

  try {
    ptbnn::RunConfig config = ptbnn::load_profile(config_path);
    if (opt_method->count()) config.method = method;
    if (opt_samples->count()) config.total_samples = samples;
    if (opt_replicas->count()) config.replicas = replicas;
    if (opt_swap->count()) config.swap_interval = swap_interval;
    if (opt_max_temp->count()) config.max_temp = max_temp;
    if (opt_lg_freq->count()) config.lg_freq = lg_freq;
    if (opt_learn_rate->count()) config.learn_rate = learn_rate;
    if (opt_seed->count()) config.seed = seed;
    if (opt_out->count()) config.out_dir = out_dir;
    if (sequential) config.parallel = false;

    const ptbnn::RunReport report = ptbnn::run_experiment(config);
    std::cout << ptbnn::report_to_json(report, true);
    return 0;
  } catch (const ptbnn::Error& e) {
    std::cerr << "error " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [internal] " << e.what() << "\n";
    return 1;
  }
}
