#include "ptbnn/target.hpp"

#include "ptbnn/data.hpp"
#include "ptbnn/errors.hpp"

namespace ptbnn {

BnnTarget::BnnTarget(const NetworkShape& shape, Matrix X, std::vector<double> y,
                     PriorSpec prior)
    : shape_(shape), X_(std::move(X)), prior_(prior) {
  if (shape_.task != Task::Regression)
    throw Error("model", "regression constructor used with classification shape");
  if (X_.rows != y.size())
    throw Error("data", "feature rows and target length differ");
  if (X_.cols != shape_.inputs)
    throw Error("data", "feature width does not match network inputs");
  Y_ = Matrix(y.size(), 1);
  for (std::size_t i = 0; i < y.size(); ++i) Y_.at(i, 0) = y[i];
}

BnnTarget::BnnTarget(const NetworkShape& shape, Matrix X,
                     std::vector<int> labels, PriorSpec prior)
    : shape_(shape),
      X_(std::move(X)),
      labels_(std::move(labels)),
      prior_(prior) {
  if (shape_.task != Task::Classification)
    throw Error("model", "classification constructor used with regression shape");
  if (X_.rows != labels_.size())
    throw Error("data", "feature rows and label count differ");
  if (X_.cols != shape_.inputs)
    throw Error("data", "feature width does not match network inputs");
  Y_ = one_hot(labels_, shape_.outputs());
}

std::size_t BnnTarget::dim() const { return param_count(shape_); }

double BnnTarget::log_likelihood(const ParamVector& theta) const {
  if (shape_.task == Task::Regression)
    return gaussian_log_likelihood(shape_, theta, X_,
                                   {Y_.data.data(), Y_.rows});
  return multinomial_log_likelihood(shape_, theta, X_, labels_);
}

double BnnTarget::log_prior(const ParamVector& theta) const {
  return ptbnn::log_prior(prior_, shape_, theta);
}

Gradient BnnTarget::error_gradient(const ParamVector& theta) const {
  return gradient(shape_, theta, X_, Y_);
}

std::optional<std::size_t> BnnTarget::eta_slot() const {
  return shape_.eta_slot();
}

}  // namespace ptbnn
