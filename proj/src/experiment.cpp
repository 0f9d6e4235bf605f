#include "ptbnn/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ptbnn/errors.hpp"
#include "ptbnn/target.hpp"

namespace fs = std::filesystem;

namespace ptbnn {

namespace {

// stream id for the classification split, far away from replica ids
constexpr std::uint64_t kSplitStreamId = 104729;

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("config", "profile key '" + key + "' needs a number, got '" +
                            value + "'");
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("config", "profile key '" + key + "' needs a non-negative integer, got '" +
                            value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lower(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("config", "profile key '" + key + "' needs true/false, got '" +
                            value + "'");
}

}  // namespace

bool RunConfig::langevin() const {
  const std::string m = lower(method);
  if (m == "pt-lg") return true;
  if (m == "pt-rw") return false;
  throw Error("config", "unknown method '" + method + "' (use PT-RW or PT-LG)");
}

void RunConfig::validate() const {
  if (dataset.empty()) throw Error("config", "no dataset path given");
  langevin();  // validates the method name
  if (hidden < 1) throw Error("config", "hidden must be at least 1");
  if (task == Task::Classification && classes < 2)
    throw Error("config", "classification needs at least 2 classes");
  if (task == Task::Regression && (embed_dim < 1 || embed_lag < 1))
    throw Error("config", "embedding needs embed_dim >= 1 and embed_lag >= 1");
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw Error("config", "train_fraction must lie strictly inside (0,1)");
  if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0)
    throw Error("config", "burn_in must lie in [0,1)");
  if (pooled_predictions && global_fraction >= 1.0)
    throw Error("config",
                "pooled predictions need a local phase (global_fraction < 1)");

  OrchestratorConfig orch;
  orch.replicas = replicas;
  orch.total_samples = total_samples;
  orch.samples_per_replica = samples_per_replica;
  orch.swap_interval = swap_interval;
  orch.max_temp = max_temp;
  orch.schedule.global_fraction = global_fraction;
  orch.init_std = init_std;
  orch.validate();

  ProposalConfig prop;
  prop.step_weights = step_weights;
  prop.step_eta = step_eta;
  prop.learn_rate = learn_rate;
  prop.lg_freq = lg_freq;
  prop.validate();

  if (sigma2 <= 0.0) throw Error("config", "sigma2 must be positive");
  if (nu1 < 0.0 || nu2 < 0.0) throw Error("config", "nu1/nu2 must be non-negative");
}

RunConfig load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open profile " + path);

  RunConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == '[') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw Error("config", path + " line " + std::to_string(line_no) +
                                ": expected key=value");
    const std::string key = lower(trim(text.substr(0, eq)));
    const std::string value = trim(text.substr(eq + 1));

    if (key == "dataset") config.dataset = value;
    else if (key == "task") {
      const std::string v = lower(value);
      if (v == "regression") config.task = Task::Regression;
      else if (v == "classification") config.task = Task::Classification;
      else throw Error("config", "unknown task '" + value + "'");
    }
    else if (key == "hidden") config.hidden = parse_count(key, value);
    else if (key == "classes") config.classes = parse_count(key, value);
    else if (key == "embed_dim") config.embed_dim = parse_count(key, value);
    else if (key == "embed_lag") config.embed_lag = parse_count(key, value);
    else if (key == "series_limit") config.series_limit = parse_count(key, value);
    else if (key == "train_fraction") config.train_fraction = parse_real(key, value);
    else if (key == "method") config.method = value;
    else if (key == "learn_rate") config.learn_rate = parse_real(key, value);
    else if (key == "lg_freq") config.lg_freq = parse_real(key, value);
    else if (key == "samples") config.total_samples = parse_count(key, value);
    else if (key == "samples_per_replica") config.samples_per_replica = parse_bool(key, value);
    else if (key == "replicas") config.replicas = parse_count(key, value);
    else if (key == "swap_interval") config.swap_interval = parse_count(key, value);
    else if (key == "max_temp") config.max_temp = parse_real(key, value);
    else if (key == "global_fraction") config.global_fraction = parse_real(key, value);
    else if (key == "burn_in") config.burn_in_fraction = parse_real(key, value);
    else if (key == "sigma2") config.sigma2 = parse_real(key, value);
    else if (key == "nu1") config.nu1 = parse_real(key, value);
    else if (key == "nu2") config.nu2 = parse_real(key, value);
    else if (key == "step_weights") config.step_weights = parse_real(key, value);
    else if (key == "step_eta") config.step_eta = parse_real(key, value);
    else if (key == "init_std") config.init_std = parse_real(key, value);
    else if (key == "seed") config.seed = parse_count(key, value);
    else if (key == "out") config.out_dir = value;
    else if (key == "pooled") config.pooled_predictions = parse_bool(key, value);
    else if (key == "full_posterior") config.full_posterior = parse_bool(key, value);
    else if (key == "parallel") config.parallel = parse_bool(key, value);
    else if (key == "trace_index") config.trace_index = parse_count(key, value);
    else
      throw Error("config", path + " line " + std::to_string(line_no) +
                                ": unknown key '" + key + "'");
  }

  if (!config.dataset.empty()) {
    const fs::path dataset(config.dataset);
    if (dataset.is_relative())
      config.dataset = (fs::path(path).parent_path() / dataset).string();
  }
  return config;
}

namespace {

std::size_t burn_count(std::size_t len, double burn_in_fraction) {
  const double threshold = burn_in_fraction * static_cast<double>(len);
  if (threshold <= 0.0) return 0;
  return std::min(len, static_cast<std::size_t>(std::ceil(threshold)));
}

MetricSummary summarize(const std::vector<double>& scores, bool best_is_min) {
  MetricSummary s;
  double sum = 0.0;
  for (double v : scores) sum += v;
  s.mean = sum / static_cast<double>(scores.size());
  double var = 0.0;
  for (double v : scores) var += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(var / static_cast<double>(scores.size()));
  s.best = best_is_min ? *std::min_element(scores.begin(), scores.end())
                       : *std::max_element(scores.begin(), scores.end());
  return s;
}

// Applies fn to every retained posterior sample. Pooled mode keeps each
// replica's post-burn-in local-phase samples; cold mode keeps replica 0's
// post-burn-in samples whatever the phase (its slot always runs at T = 1).
template <typename Fn>
std::size_t for_retained(const std::vector<ReplicaState>& replicas,
                         double burn_in_fraction, bool pooled, Fn&& fn) {
  std::size_t retained = 0;
  const std::size_t last = pooled ? replicas.size() : 1;
  for (std::size_t m = 0; m < last; ++m) {
    const auto& history = replicas[m].history;
    for (std::size_t k = burn_count(history.size(), burn_in_fraction);
         k < history.size(); ++k) {
      if (pooled && !history[k].local_phase) continue;
      fn(history[k]);
      ++retained;
    }
  }
  if (retained == 0)
    throw Error("report",
                "no posterior samples retained; lower burn_in or global_fraction");
  return retained;
}

double sample_rmse(const NetworkShape& shape, const ParamVector& theta,
                   const Matrix& X, std::span<const double> y) {
  std::vector<double> y_hat(X.rows);
  for (std::size_t t = 0; t < X.rows; ++t)
    y_hat[t] = forward(shape, theta, X.row(t))[0];
  return rmse(y, y_hat);
}

double sample_accuracy(const NetworkShape& shape, const ParamVector& theta,
                       const Matrix& X, const std::vector<int>& labels) {
  std::vector<int> predicted(X.rows);
  for (std::size_t t = 0; t < X.rows; ++t) {
    const std::vector<double> probs = softmax(forward(shape, theta, X.row(t)));
    predicted[t] = static_cast<int>(argmax_class(probs));
  }
  return accuracy(labels, predicted);
}

}  // namespace

PredictionReport posterior_predict(const std::vector<ReplicaState>& replicas,
                                   const NetworkShape& shape,
                                   const Matrix& x_train,
                                   std::span<const double> y_train,
                                   const Matrix& x_test,
                                   std::span<const double> y_test,
                                   double burn_in_fraction, bool pooled) {
  std::vector<double> train_scores, test_scores;
  PredictionReport report;
  report.retained = for_retained(
      replicas, burn_in_fraction, pooled, [&](const SampleRecord& rec) {
        train_scores.push_back(sample_rmse(shape, rec.theta, x_train, y_train));
        test_scores.push_back(sample_rmse(shape, rec.theta, x_test, y_test));
      });
  report.train = summarize(train_scores, /*best_is_min=*/true);
  report.test = summarize(test_scores, /*best_is_min=*/true);
  return report;
}

PredictionReport posterior_predict(const std::vector<ReplicaState>& replicas,
                                   const NetworkShape& shape,
                                   const Matrix& x_train,
                                   const std::vector<int>& y_train,
                                   const Matrix& x_test,
                                   const std::vector<int>& y_test,
                                   double burn_in_fraction, bool pooled) {
  std::vector<double> train_scores, test_scores;
  PredictionReport report;
  report.retained = for_retained(
      replicas, burn_in_fraction, pooled, [&](const SampleRecord& rec) {
        train_scores.push_back(
            sample_accuracy(shape, rec.theta, x_train, y_train));
        test_scores.push_back(sample_accuracy(shape, rec.theta, x_test, y_test));
      });
  report.train = summarize(train_scores, /*best_is_min=*/false);
  report.test = summarize(test_scores, /*best_is_min=*/false);
  return report;
}

namespace {

void write_chain_csv(const ReplicaState& replica, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path.string());
  out << "iteration,phase,temperature,loglik,logprior";
  const std::size_t dim = replica.history.empty()
                              ? 0
                              : replica.history.front().theta.size();
  for (std::size_t i = 1; i <= dim; ++i) out << ",theta_" << i;
  out << "\n";
  for (std::size_t k = 0; k < replica.history.size(); ++k) {
    const SampleRecord& rec = replica.history[k];
    out << k << ',' << (rec.local_phase ? "local" : "global") << ','
        << fmt17(1.0 / rec.beta) << ',' << fmt17(rec.loglik) << ','
        << fmt17(rec.logprior);
    for (double v : rec.theta) out << ',' << fmt17(v);
    out << "\n";
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path.string());
  out << text;
}

}  // namespace

void emit_trace(const std::vector<ReplicaState>& replicas,
                std::size_t parameter_index, double burn_in_fraction,
                const std::string& out_dir) {
  if (replicas.empty()) throw Error("report", "no chains to trace");
  const auto& history = replicas.front().history;
  if (history.empty()) throw Error("report", "cold chain is empty");
  if (parameter_index >= history.front().theta.size())
    throw Error("report", "trace index outside the parameter vector");

  std::vector<double> values;
  for (std::size_t k = burn_count(history.size(), burn_in_fraction);
       k < history.size(); ++k)
    values.push_back(history[k].theta[parameter_index]);
  if (values.empty()) throw Error("report", "burn-in leaves no trace rows");

  const std::string tag = std::to_string(parameter_index);
  std::ostringstream trace;
  trace << "iteration,value\n";
  const std::size_t first = history.size() - values.size();
  for (std::size_t i = 0; i < values.size(); ++i)
    trace << first + i << ',' << fmt17(values[i]) << "\n";
  write_text(fs::path(out_dir) / ("trace_" + tag + ".csv"), trace.str());

  constexpr std::size_t kBins = 50;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(kBins);
  std::vector<std::size_t> counts(kBins, 0);
  for (double v : values) {
    std::size_t bin = width > 0.0 ? static_cast<std::size_t>((v - lo) / width)
                                  : 0;
    counts[std::min(bin, kBins - 1)] += 1;
  }
  std::ostringstream hist;
  hist << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < kBins; ++b)
    hist << fmt17(lo + width * static_cast<double>(b)) << ','
         << fmt17(lo + width * static_cast<double>(b + 1)) << ',' << counts[b]
         << "\n";
  write_text(fs::path(out_dir) / ("posterior_" + tag + ".csv"), hist.str());
}

std::string report_to_json(const RunReport& report, bool with_timing) {
  nlohmann::ordered_json j;
  j["metric"] = report.metric;
  j["train"] = {{"mean", report.prediction.train.mean},
                {"best", report.prediction.train.best},
                {"std", report.prediction.train.std_dev}};
  j["test"] = {{"mean", report.prediction.test.mean},
               {"best", report.prediction.test.best},
               {"std", report.prediction.test.std_dev}};
  j["swap_percent"] = report.swap_percent;
  j["accept_percent"] = report.accept_percent;
  j["failed_proposals"] = report.failed_proposals;
  j["retained_samples"] = report.prediction.retained;
  j["steps_per_replica"] = report.steps_per_replica;
  j["tempered_steps"] = report.tempered_steps;

  const RunConfig& c = report.config;
  nlohmann::ordered_json cfg;
  cfg["dataset"] = c.dataset;
  cfg["task"] = c.task == Task::Regression ? "regression" : "classification";
  cfg["hidden"] = c.hidden;
  if (c.task == Task::Classification) cfg["classes"] = c.classes;
  if (c.task == Task::Regression) {
    cfg["embed_dim"] = c.embed_dim;
    cfg["embed_lag"] = c.embed_lag;
    cfg["series_limit"] = c.series_limit;
  }
  cfg["train_fraction"] = c.train_fraction;
  cfg["method"] = c.method;
  cfg["learn_rate"] = c.learn_rate;
  cfg["lg_freq"] = c.lg_freq;
  cfg["samples"] = c.total_samples;
  cfg["samples_per_replica"] = c.samples_per_replica;
  cfg["replicas"] = c.replicas;
  cfg["swap_interval"] = c.swap_interval;
  cfg["max_temp"] = c.max_temp;
  cfg["global_fraction"] = c.global_fraction;
  cfg["burn_in"] = c.burn_in_fraction;
  cfg["sigma2"] = c.sigma2;
  cfg["nu1"] = c.nu1;
  cfg["nu2"] = c.nu2;
  cfg["step_weights"] = c.step_weights;
  cfg["step_eta"] = c.step_eta;
  cfg["init_std"] = c.init_std;
  cfg["seed"] = c.seed;
  cfg["pooled"] = c.pooled_predictions;
  cfg["full_posterior"] = c.full_posterior;
  cfg["parallel"] = c.parallel;
  j["config"] = cfg;

  if (with_timing) j["elapsed_seconds"] = report.elapsed_seconds;
  return j.dump(2) + "\n";
}

namespace {

void write_artifacts(const RunReport& report, const RunResult& result) {
  const RunConfig& config = report.config;
  if (config.out_dir.empty()) return;
  fs::create_directories(config.out_dir);
  write_text(fs::path(config.out_dir) / "report.json",
             report_to_json(report, true));
  for (const ReplicaState& replica : result.replicas)
    write_chain_csv(replica, fs::path(config.out_dir) /
                                 ("chain_replica_" +
                                  std::to_string(replica.id) + ".csv"));
  emit_trace(result.replicas, config.trace_index, config.burn_in_fraction,
             config.out_dir);
}

RunReport finish_report(const RunConfig& config, const RunResult& result,
                        PredictionReport prediction, const std::string& metric) {
  RunReport report;
  report.metric = metric;
  report.prediction = prediction;
  report.swap_percent = result.swaps.percent();
  report.accept_percent = result.accept_percent();
  for (const ReplicaState& r : result.replicas)
    report.failed_proposals += r.failed;
  report.elapsed_seconds = result.elapsed_seconds;
  report.steps_per_replica = result.steps_per_replica;
  report.tempered_steps = result.tempered_steps;
  report.config = config;
  write_artifacts(report, result);
  return report;
}

}  // namespace

RunReport run_experiment(const RunConfig& config) {
  config.validate();

  OrchestratorConfig orch;
  orch.replicas = config.replicas;
  orch.total_samples = config.total_samples;
  orch.samples_per_replica = config.samples_per_replica;
  orch.swap_interval = config.swap_interval;
  orch.max_temp = config.max_temp;
  orch.schedule.global_fraction = config.global_fraction;
  orch.seed = config.seed;
  orch.init_std = config.init_std;
  orch.temper_prior = config.full_posterior;
  orch.parallel = config.parallel;

  ProposalConfig prop;
  prop.kind = config.langevin() ? ProposalKind::Langevin
                                : ProposalKind::RandomWalk;
  prop.step_weights = config.step_weights;
  prop.step_eta = config.step_eta;
  prop.learn_rate = config.learn_rate;
  prop.lg_freq = config.lg_freq;

  const PriorSpec prior{config.sigma2, config.nu1, config.nu2};

  if (config.task == Task::Regression) {
    const Matrix raw = load_csv(config.dataset);
    std::vector<double> series;
    const std::size_t limit =
        config.series_limit == 0
            ? raw.rows
            : std::min(config.series_limit, raw.rows);
    series.reserve(limit);
    for (std::size_t r = 0; r < limit; ++r) series.push_back(raw.at(r, 0));

    ScaleRecord scale;
    const std::vector<double> scaled = minmax_scale(series, scale);
    const EmbeddedDataset embedded =
        takens_embed(scaled, config.embed_dim, config.embed_lag);
    const auto [train, test] =
        train_test_split(embedded, config.train_fraction);
    if (test.X.empty())
      throw Error("data", "train fraction leaves no test rows");

    const NetworkShape shape(config.embed_dim, config.hidden, Task::Regression);
    const BnnTarget target(shape, train.X, train.y, prior);
    const RunResult result = run(orch, target, prop);
    PredictionReport prediction = posterior_predict(
        result.replicas, shape, train.X, train.y, test.X, test.y,
        config.burn_in_fraction, config.pooled_predictions);
    return finish_report(config, result, prediction, "rmse");
  }

  const Matrix raw = load_csv(config.dataset);
  if (raw.cols < 2)
    throw Error("data", "classification data needs features plus a label column");
  Matrix features(raw.rows, raw.cols - 1);
  std::vector<int> labels(raw.rows);
  for (std::size_t r = 0; r < raw.rows; ++r) {
    for (std::size_t c = 0; c + 1 < raw.cols; ++c)
      features.at(r, c) = raw.at(r, c);
    const double v = raw.at(r, raw.cols - 1);
    if (v != std::floor(v) || v < 0.0 ||
        v >= static_cast<double>(config.classes))
      throw Error("data", "row " + std::to_string(r + 1) +
                              ": label must be an integer in 0.." +
                              std::to_string(config.classes - 1));
    labels[r] = static_cast<int>(v);
  }
  minmax_scale_columns(features);

  ClassificationDataset full;
  full.X = std::move(features);
  full.labels = std::move(labels);
  full.classes = config.classes;
  const auto [train, test] = train_test_split(
      full, config.train_fraction, derive_seed(config.seed, kSplitStreamId));
  if (test.X.empty()) throw Error("data", "train fraction leaves no test rows");

  const NetworkShape shape(full.X.cols, config.hidden, Task::Classification,
                           config.classes);
  const BnnTarget target(shape, train.X, train.labels, prior);
  const RunResult result = run(orch, target, prop);
  PredictionReport prediction = posterior_predict(
      result.replicas, shape, train.X, train.labels, test.X, test.labels,
      config.burn_in_fraction, config.pooled_predictions);
  return finish_report(config, result, prediction, "accuracy");
}

}  // namespace ptbnn
