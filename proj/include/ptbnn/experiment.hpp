#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ptbnn/data.hpp"
#include "ptbnn/inference.hpp"
#include "ptbnn/tempering.hpp"

namespace ptbnn {

// Everything needed to reproduce one run. Defaults mirror the bundled
// experiment protocol; profiles and CLI flags override them.
struct RunConfig {
  std::string dataset;  // CSV path
  Task task = Task::Regression;

  // model
  std::size_t hidden = 5;
  std::size_t classes = 2;   // classification only
  std::size_t embed_dim = 4; // time-series input window
  std::size_t embed_lag = 2;
  std::size_t series_limit = 1000;  // leading points used; 0 = whole series
  double train_fraction = 0.6;

  // sampler
  std::string method = "PT-RW";  // or "PT-LG"
  double learn_rate = 0.1;
  double lg_freq = 0.5;
  std::size_t total_samples = 100000;
  bool samples_per_replica = false;
  std::size_t replicas = 10;
  std::size_t swap_interval = 100;
  double max_temp = 10.0;
  double global_fraction = 0.6;
  double burn_in_fraction = 0.5;
  double sigma2 = 25.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double step_weights = 0.025;
  double step_eta = 0.2;
  double init_std = 0.5;
  std::uint64_t seed = 1;

  // reporting
  std::string out_dir;  // empty: no artifacts written
  bool pooled_predictions = true;  // false: cold chain (replica 0) only
  bool full_posterior = false;     // temper the prior as well
  bool parallel = true;
  std::size_t trace_index = 0;  // parameter traced by emit_trace

  void validate() const;
  bool langevin() const;  // parses method, throws on unknown names
};

/// Parse a key=value profile ('#' comments). Relative dataset paths resolve
/// against the profile's directory.
RunConfig load_profile(const std::string& path);

struct MetricSummary {
  double mean = 0.0;
  double best = 0.0;
  double std_dev = 0.0;
};

struct PredictionReport {
  MetricSummary train;
  MetricSummary test;
  std::size_t retained = 0;  // posterior samples used
};

struct RunReport {
  std::string metric;  // "rmse" or "accuracy"
  PredictionReport prediction;
  double swap_percent = 0.0;
  double accept_percent = 0.0;
  std::uint64_t failed_proposals = 0;
  double elapsed_seconds = 0.0;
  std::size_t steps_per_replica = 0;
  std::size_t tempered_steps = 0;
  RunConfig config;
};

/// Posterior-predictive summary over retained samples. Pooled mode keeps
/// every replica's post-burn-in local-phase samples; cold mode keeps replica
/// 0's post-burn-in samples. Regression scores RMSE (best = lowest).
PredictionReport posterior_predict(const std::vector<ReplicaState>& replicas,
                                   const NetworkShape& shape,
                                   const Matrix& x_train,
                                   std::span<const double> y_train,
                                   const Matrix& x_test,
                                   std::span<const double> y_test,
                                   double burn_in_fraction, bool pooled);

/// Classification variant scoring accuracy (best = highest).
PredictionReport posterior_predict(const std::vector<ReplicaState>& replicas,
                                   const NetworkShape& shape,
                                   const Matrix& x_train,
                                   const std::vector<int>& y_train,
                                   const Matrix& x_test,
                                   const std::vector<int>& y_test,
                                   double burn_in_fraction, bool pooled);

/// Full pipeline: load, scale, embed/split, sample, summarize; writes report
/// JSON, per-replica chain CSVs, and trace/posterior CSVs when out_dir is set.
RunReport run_experiment(const RunConfig& config);

/// Deterministic JSON rendering of a report; elapsed seconds are the only
/// field excluded by with_timing = false.
std::string report_to_json(const RunReport& report, bool with_timing = true);

/// Post-burn-in trace of one parameter of the cold chain plus a 50-bin
/// histogram, written as <out_dir>/trace_<index>.csv and posterior_<index>.csv.
void emit_trace(const std::vector<ReplicaState>& replicas,
                std::size_t parameter_index, double burn_in_fraction,
                const std::string& out_dir);

}  // namespace ptbnn
