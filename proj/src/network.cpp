#include "ptbnn/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ptbnn {

NetworkShape::NetworkShape(std::size_t inputs_, std::size_t hidden_, Task task_,
                           std::size_t classes_)
    : inputs(inputs_), hidden(hidden_), classes(classes_), task(task_) {
  if (inputs < 1 || hidden < 1)
    throw Error("model", "network needs at least one input and one hidden unit");
  if (task == Task::Classification && classes < 2)
    throw Error("model", "classification needs at least two classes, got " +
                             std::to_string(classes));
  if (task == Task::Regression) classes = 1;
}

std::optional<std::size_t> NetworkShape::eta_slot() const {
  if (!has_eta()) return std::nullopt;
  return param_count(*this) - 1;
}

std::size_t param_count(const NetworkShape& shape) {
  const std::size_t o = shape.outputs();
  std::size_t n = shape.inputs * shape.hidden + shape.hidden +
                  shape.hidden * o + o;
  if (shape.has_eta()) n += 1;
  return n;
}

namespace {

void check_theta(const NetworkShape& shape, const ParamVector& theta) {
  if (theta.size() != param_count(shape))
    throw Error("model", "parameter vector has length " +
                             std::to_string(theta.size()) + ", expected " +
                             std::to_string(param_count(shape)));
}

// Single forward pass writing hidden activations and outputs into
// caller-owned scratch; the hot loops below reuse the buffers across rows.
void forward_into(const NetworkShape& shape, const ParamVector& theta,
                  std::span<const double> x, std::vector<double>& hidden_act,
                  std::vector<double>& out) {
  const std::size_t I = shape.inputs, H = shape.hidden, O = shape.outputs();
  hidden_act.resize(H);
  out.resize(O);
  for (std::size_t h = 0; h < H; ++h) {
    double z = theta[shape.bias_h(h)];
    const double* w = &theta[shape.weight_ih(h, 0)];
    for (std::size_t i = 0; i < I; ++i) z += w[i] * x[i];
    hidden_act[h] = sigmoid(z);
  }
  for (std::size_t o = 0; o < O; ++o) {
    double z = theta[shape.bias_o(o)];
    const double* v = &theta[shape.weight_ho(o, 0)];
    for (std::size_t h = 0; h < H; ++h) z += v[h] * hidden_act[h];
    out[o] = sigmoid(z);
  }
}

}  // namespace

std::vector<double> forward(const NetworkShape& shape, const ParamVector& theta,
                            std::span<const double> x) {
  check_theta(shape, theta);
  if (x.size() != shape.inputs)
    throw Error("model", "input row has " + std::to_string(x.size()) +
                             " values, network expects " +
                             std::to_string(shape.inputs));
  std::vector<double> hidden_act, out;
  forward_into(shape, theta, x, hidden_act, out);
  return out;
}

std::vector<double> softmax(std::span<const double> scores) {
  if (scores.size() < 2)
    throw Error("model", "softmax needs at least two scores");
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> probs(scores.size());
  double norm = 0.0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    probs[k] = std::exp(scores[k] - top);
    norm += probs[k];
  }
  for (double& p : probs) p /= norm;
  return probs;
}

double sum_squared_error(const NetworkShape& shape, const ParamVector& theta,
                         const Matrix& X, const Matrix& Y) {
  check_theta(shape, theta);
  if (X.rows != Y.rows)
    throw Error("model", "feature and target row counts differ");
  if (Y.cols != shape.outputs())
    throw Error("model", "target width does not match network outputs");
  std::vector<double> hidden_act, out;
  double sse = 0.0;
  for (std::size_t t = 0; t < X.rows; ++t) {
    forward_into(shape, theta, X.row(t), hidden_act, out);
    const auto y = Y.row(t);
    for (std::size_t o = 0; o < out.size(); ++o) {
      const double r = y[o] - out[o];
      sse += r * r;
    }
  }
  return sse;
}

Gradient gradient(const NetworkShape& shape, const ParamVector& theta,
                  const Matrix& X, const Matrix& Y) {
  check_theta(shape, theta);
  if (X.rows != Y.rows)
    throw Error("model", "feature and target row counts differ");
  if (X.cols != shape.inputs || Y.cols != shape.outputs())
    throw Error("model", "dataset width does not match network shape");

  const std::size_t I = shape.inputs, H = shape.hidden, O = shape.outputs();
  Gradient grad(theta.size(), 0.0);
  std::vector<double> hidden_act, out, delta_out(O), delta_hidden(H);

  for (std::size_t t = 0; t < X.rows; ++t) {
    const auto x = X.row(t);
    const auto y = Y.row(t);
    forward_into(shape, theta, x, hidden_act, out);

    for (std::size_t o = 0; o < O; ++o) {
      // dE/ds_o for E = sum (y - sigmoid(s))^2
      delta_out[o] = -2.0 * (y[o] - out[o]) * out[o] * (1.0 - out[o]);
      grad[shape.bias_o(o)] += delta_out[o];
      for (std::size_t h = 0; h < H; ++h)
        grad[shape.weight_ho(o, h)] += delta_out[o] * hidden_act[h];
    }
    for (std::size_t h = 0; h < H; ++h) {
      double back = 0.0;
      for (std::size_t o = 0; o < O; ++o)
        back += delta_out[o] * theta[shape.weight_ho(o, h)];
      delta_hidden[h] = back * hidden_act[h] * (1.0 - hidden_act[h]);
      grad[shape.bias_h(h)] += delta_hidden[h];
      for (std::size_t i = 0; i < I; ++i)
        grad[shape.weight_ih(h, i)] += delta_hidden[h] * x[i];
    }
  }
  // eta never receives drift; it moves by random walk only
  if (auto eta = shape.eta_slot()) grad[*eta] = 0.0;
  return grad;
}

UnpackedParams unpack(const NetworkShape& shape, const ParamVector& theta) {
  check_theta(shape, theta);
  const std::size_t I = shape.inputs, H = shape.hidden, O = shape.outputs();
  UnpackedParams p;
  p.weights_ih = Matrix(H, I);
  p.weights_ho = Matrix(O, H);
  p.bias_h.resize(H);
  p.bias_o.resize(O);
  for (std::size_t h = 0; h < H; ++h) {
    for (std::size_t i = 0; i < I; ++i)
      p.weights_ih.at(h, i) = theta[shape.weight_ih(h, i)];
    p.bias_h[h] = theta[shape.bias_h(h)];
  }
  for (std::size_t o = 0; o < O; ++o) {
    for (std::size_t h = 0; h < H; ++h)
      p.weights_ho.at(o, h) = theta[shape.weight_ho(o, h)];
    p.bias_o[o] = theta[shape.bias_o(o)];
  }
  if (auto eta = shape.eta_slot()) p.eta = theta[*eta];
  return p;
}

ParamVector pack(const NetworkShape& shape, const UnpackedParams& params) {
  const std::size_t I = shape.inputs, H = shape.hidden, O = shape.outputs();
  ParamVector theta(param_count(shape), 0.0);
  for (std::size_t h = 0; h < H; ++h) {
    for (std::size_t i = 0; i < I; ++i)
      theta[shape.weight_ih(h, i)] = params.weights_ih.at(h, i);
    theta[shape.bias_h(h)] = params.bias_h[h];
  }
  for (std::size_t o = 0; o < O; ++o) {
    for (std::size_t h = 0; h < H; ++h)
      theta[shape.weight_ho(o, h)] = params.weights_ho.at(o, h);
    theta[shape.bias_o(o)] = params.bias_o[o];
  }
  if (auto eta = shape.eta_slot()) {
    if (!params.eta)
      throw Error("model", "regression parameters need an eta value");
    theta[*eta] = *params.eta;
  }
  return theta;
}

}  // namespace ptbnn
