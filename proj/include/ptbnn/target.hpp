#pragma once

#include <optional>
#include <vector>

#include "ptbnn/inference.hpp"
#include "ptbnn/network.hpp"

namespace ptbnn {

// Posterior terms as seen by the sampler. Concrete targets bundle a model,
// its data, and its prior; tests substitute analytic toys. All methods are
// const and safe to call concurrently.
class Target {
 public:
  virtual ~Target() = default;

  virtual std::size_t dim() const = 0;
  /// Untempered log-likelihood; finite or -infinity, never NaN.
  virtual double log_likelihood(const ParamVector& theta) const = 0;
  virtual double log_prior(const ParamVector& theta) const = 0;
  /// Drift gradient for Langevin proposals: gradient of the proposal error
  /// function, not of the log-posterior. All zeros is a valid fallback.
  virtual Gradient error_gradient(const ParamVector& theta) const = 0;
  /// Slot that takes the dedicated noise-parameter step size, if any.
  virtual std::optional<std::size_t> eta_slot() const = 0;
};

// Bayesian neural network posterior over a fixed training set.
class BnnTarget final : public Target {
 public:
  /// Regression: one target value per row of X.
  BnnTarget(const NetworkShape& shape, Matrix X, std::vector<double> y,
            PriorSpec prior);
  /// Classification: labels in 0..K-1; one-hot targets are derived for the
  /// proposal error function.
  BnnTarget(const NetworkShape& shape, Matrix X, std::vector<int> labels,
            PriorSpec prior);

  std::size_t dim() const override;
  double log_likelihood(const ParamVector& theta) const override;
  double log_prior(const ParamVector& theta) const override;
  Gradient error_gradient(const ParamVector& theta) const override;
  std::optional<std::size_t> eta_slot() const override;

  const NetworkShape& shape() const { return shape_; }
  const Matrix& inputs() const { return X_; }
  const Matrix& targets() const { return Y_; }
  const std::vector<int>& labels() const { return labels_; }
  const PriorSpec& prior() const { return prior_; }

 private:
  NetworkShape shape_;
  Matrix X_;
  Matrix Y_;                 // regression: n x 1; classification: one-hot n x K
  std::vector<int> labels_;  // classification only
  PriorSpec prior_;
};

}  // namespace ptbnn
