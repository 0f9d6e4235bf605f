#pragma once

#include <span>
#include <vector>

#include "ptbnn/network.hpp"

namespace ptbnn {

// Log densities are plain doubles: finite or -infinity, never NaN.

// Gaussian prior variance for weights/biases plus inverse-gamma constants for
// the regression noise variance tau^2.
struct PriorSpec {
  double sigma2 = 25.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
};

/// Gaussian log-likelihood of a regression network, with tau^2 = exp(eta)
/// read from the parameter vector's eta slot.
double gaussian_log_likelihood(const NetworkShape& shape,
                               const ParamVector& theta, const Matrix& X,
                               std::span<const double> y);

/// Multinomial log-likelihood: sum over rows of the log softmax probability
/// assigned to the observed label.
double multinomial_log_likelihood(const NetworkShape& shape,
                                  const ParamVector& theta, const Matrix& X,
                                  const std::vector<int>& labels);

/// Log prior over all weights/biases (zero-mean Gaussian, variance sigma2)
/// plus, for regression, the inverse-gamma terms on tau^2 evaluated at
/// exp(eta). Additive constants are dropped throughout.
double log_prior(const PriorSpec& prior, const NetworkShape& shape,
                 const ParamVector& theta);

double rmse(std::span<const double> y, std::span<const double> y_hat);

/// Index of the largest entry; ties resolve to the lowest index.
std::size_t argmax_class(std::span<const double> values);

/// Percentage of positions where the two label vectors agree.
double accuracy(const std::vector<int>& labels,
                const std::vector<int>& predictions);

}  // namespace ptbnn
