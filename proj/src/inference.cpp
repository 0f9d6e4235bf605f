#include "ptbnn/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ptbnn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// LogDensity contract: finite or -infinity, never NaN.
double clamp_log_density(double v) { return std::isnan(v) ? kNegInf : v; }

}  // namespace

double gaussian_log_likelihood(const NetworkShape& shape,
                               const ParamVector& theta, const Matrix& X,
                               std::span<const double> y) {
  if (shape.task != Task::Regression)
    throw Error("model", "gaussian likelihood needs a regression network");
  if (X.rows != y.size())
    throw Error("data", "feature rows and target length differ");
  if (theta.size() != param_count(shape))
    throw Error("model", "parameter vector length does not match shape");

  const double eta = theta[*shape.eta_slot()];
  const double tau_sq = std::exp(eta);
  const auto n = static_cast<double>(X.rows);

  double sse = 0.0;
  for (std::size_t t = 0; t < X.rows; ++t) {
    const double r = y[t] - forward(shape, theta, X.row(t))[0];
    sse += r * r;
  }
  const double v =
      -0.5 * n * std::log(2.0 * M_PI * tau_sq) - sse / (2.0 * tau_sq);
  return clamp_log_density(v);
}

double multinomial_log_likelihood(const NetworkShape& shape,
                                  const ParamVector& theta, const Matrix& X,
                                  const std::vector<int>& labels) {
  if (shape.task != Task::Classification)
    throw Error("model", "multinomial likelihood needs a classification network");
  if (X.rows != labels.size())
    throw Error("data", "feature rows and label count differ");

  const auto k_classes = static_cast<int>(shape.outputs());
  double total = 0.0;
  for (std::size_t t = 0; t < X.rows; ++t) {
    const int label = labels[t];
    if (label < 0 || label >= k_classes)
      throw Error("data", "label " + std::to_string(label) + " at row " +
                              std::to_string(t) + " outside 0.." +
                              std::to_string(k_classes - 1));
    const std::vector<double> scores = forward(shape, theta, X.row(t));
    // log softmax evaluated directly for stability
    const double top = *std::max_element(scores.begin(), scores.end());
    double norm = 0.0;
    for (double s : scores) norm += std::exp(s - top);
    total += scores[static_cast<std::size_t>(label)] - top - std::log(norm);
  }
  return clamp_log_density(total);
}

double log_prior(const PriorSpec& prior, const NetworkShape& shape,
                 const ParamVector& theta) {
  if (prior.sigma2 <= 0.0)
    throw Error("config", "prior sigma2 must be positive");
  if (prior.nu1 < 0.0 || prior.nu2 < 0.0)
    throw Error("config", "prior nu1/nu2 must be non-negative");
  if (theta.size() != param_count(shape))
    throw Error("model", "parameter vector length does not match shape");

  const auto eta_slot = shape.eta_slot();
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (eta_slot && i == *eta_slot) continue;
    sum_sq += theta[i] * theta[i];
  }
  double v = -sum_sq / (2.0 * prior.sigma2);
  if (eta_slot) {
    // log tau^2 = eta, 1/tau^2 = exp(-eta)
    const double eta = theta[*eta_slot];
    v += -(1.0 + prior.nu1) * eta - prior.nu2 * std::exp(-eta);
  }
  return clamp_log_density(v);
}

double rmse(std::span<const double> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size())
    throw Error("data", "prediction and target lengths differ");
  if (y.empty()) throw Error("data", "rmse of an empty vector");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - y_hat[i];
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(y.size()));
}

std::size_t argmax_class(std::span<const double> values) {
  if (values.empty()) throw Error("data", "argmax of an empty vector");
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

double accuracy(const std::vector<int>& labels,
                const std::vector<int>& predictions) {
  if (labels.size() != predictions.size())
    throw Error("data", "label and prediction lengths differ");
  if (labels.empty()) throw Error("data", "accuracy of an empty vector");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == predictions[i]) ++hits;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(labels.size());
}

}  // namespace ptbnn
