#include "ptbnn/proposals.hpp"

#include "ptbnn/errors.hpp"

namespace ptbnn {

void ProposalConfig::validate() const {
  if (step_weights <= 0.0) throw Error("config", "step_weights must be positive");
  if (step_eta <= 0.0) throw Error("config", "step_eta must be positive");
  if (learn_rate < 0.0) throw Error("config", "learn_rate must be non-negative");
  if (lg_freq < 0.0 || lg_freq > 1.0)
    throw Error("config", "lg_freq must lie in [0,1]");
}

ProposalKind select_kind(const ProposalConfig& config, RngStream& rng) {
  if (config.kind == ProposalKind::RandomWalk) return ProposalKind::RandomWalk;
  if (config.lg_freq >= 1.0) return ProposalKind::Langevin;
  if (config.lg_freq <= 0.0) return ProposalKind::RandomWalk;
  return rng.uniform() < config.lg_freq ? ProposalKind::Langevin
                                        : ProposalKind::RandomWalk;
}

namespace {

// One gaussian per slot in slot order; both kernels share this so their
// streams stay interchangeable.
ParamVector perturb(const ParamVector& mean, std::optional<std::size_t> eta_slot,
                    const ProposalConfig& config, RngStream& rng) {
  ParamVector candidate(mean.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double step =
        (eta_slot && i == *eta_slot) ? config.step_eta : config.step_weights;
    candidate[i] = mean[i] + rng.gaussian(step);
  }
  return candidate;
}

}  // namespace

Proposal propose_random_walk(const ParamVector& current,
                             std::optional<std::size_t> eta_slot,
                             const ProposalConfig& config, RngStream& rng) {
  return {perturb(current, eta_slot, config, rng), 0.0};
}

Proposal propose_langevin(const ParamVector& current, const Target& target,
                          const ProposalConfig& config, RngStream& rng) {
  const auto eta_slot = target.eta_slot();
  const double r = config.learn_rate;

  const Gradient grad_current = target.error_gradient(current);
  ParamVector mean(current.size());
  for (std::size_t i = 0; i < current.size(); ++i)
    mean[i] = current[i] - r * grad_current[i];

  Proposal out;
  out.candidate = perturb(mean, eta_slot, config, rng);

  // reverse-direction mean, drifted from the candidate
  const Gradient grad_candidate = target.error_gradient(out.candidate);
  double correction = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    const double step =
        (eta_slot && i == *eta_slot) ? config.step_eta : config.step_weights;
    const double reverse_mean = out.candidate[i] - r * grad_candidate[i];
    const double d_back = current[i] - reverse_mean;  // current given candidate
    const double d_fwd = out.candidate[i] - mean[i];  // candidate given current
    correction += (d_fwd * d_fwd - d_back * d_back) / (2.0 * step * step);
  }
  out.log_q_correction = correction;
  return out;
}

}  // namespace ptbnn
