#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ptbnn/errors.hpp"
#include "ptbnn/matrix.hpp"

namespace ptbnn {

enum class Task { Regression, Classification };

// Flat parameter vector; layout is fixed by NetworkShape.
using ParamVector = std::vector<double>;

// Gradient of the proposal error function, same length and layout as the
// parameter vector it was taken at; the eta slot (if any) is always zero.
using Gradient = std::vector<double>;

// One-hidden-layer feedforward network geometry plus the deterministic flat
// parameter layout used everywhere:
//   input->hidden weights (grouped by hidden unit), hidden biases,
//   hidden->output weights (grouped by output unit), output biases,
//   then for regression the log noise variance eta = log(tau^2).
struct NetworkShape {
  std::size_t inputs = 1;
  std::size_t hidden = 1;
  std::size_t classes = 1;  // K >= 2 for classification, ignored for regression
  Task task = Task::Regression;

  NetworkShape(std::size_t inputs, std::size_t hidden, Task task,
               std::size_t classes = 1);

  std::size_t outputs() const {
    return task == Task::Classification ? classes : 1;
  }
  bool has_eta() const { return task == Task::Regression; }

  // offsets into the flat parameter vector
  std::size_t weight_ih(std::size_t h, std::size_t i) const {
    return h * inputs + i;
  }
  std::size_t bias_h(std::size_t h) const { return inputs * hidden + h; }
  std::size_t weight_ho(std::size_t o, std::size_t h) const {
    return inputs * hidden + hidden + o * hidden + h;
  }
  std::size_t bias_o(std::size_t o) const {
    return inputs * hidden + hidden + outputs() * hidden + o;
  }
  std::optional<std::size_t> eta_slot() const;
};

/// Total number of parameters, including the eta slot for regression.
std::size_t param_count(const NetworkShape& shape);

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Network output for one input row: a single sigmoid value for regression,
/// K per-unit sigmoid scores for classification (softmax is applied by
/// callers that need probabilities).
std::vector<double> forward(const NetworkShape& shape, const ParamVector& theta,
                            std::span<const double> x);

/// Numerically stable softmax; entries are positive and sum to one.
std::vector<double> softmax(std::span<const double> scores);

/// Sum-squared proposal error E(theta) = sum_t sum_o (y_to - f_o(x_t))^2.
/// For classification Y holds one-hot rows against the sigmoid scores.
double sum_squared_error(const NetworkShape& shape, const ParamVector& theta,
                         const Matrix& X, const Matrix& Y);

/// Exact backpropagation gradient of sum_squared_error; the eta entry is 0.
Gradient gradient(const NetworkShape& shape, const ParamVector& theta,
                  const Matrix& X, const Matrix& Y);

// Structured view of a flat parameter vector, mainly for inspection and the
// pack/unpack round-trip contract.
struct UnpackedParams {
  Matrix weights_ih;          // hidden x inputs
  std::vector<double> bias_h;
  Matrix weights_ho;          // outputs x hidden
  std::vector<double> bias_o;
  std::optional<double> eta;
};

UnpackedParams unpack(const NetworkShape& shape, const ParamVector& theta);
ParamVector pack(const NetworkShape& shape, const UnpackedParams& params);

}  // namespace ptbnn
