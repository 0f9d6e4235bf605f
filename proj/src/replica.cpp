#include "ptbnn/replica.hpp"

#include <cmath>
#include <limits>

namespace ptbnn {

ReplicaState make_replica(std::size_t id, double temperature,
                          std::uint64_t seed, const Target& target,
                          double init_std) {
  ReplicaState state(seed);
  state.id = id;
  state.temperature = temperature;
  state.beta = 1.0 / temperature;
  state.theta.resize(target.dim());
  const auto eta = target.eta_slot();
  for (std::size_t i = 0; i < state.theta.size(); ++i)
    state.theta[i] = (eta && i == *eta) ? 0.0 : state.rng.gaussian(init_std);
  state.loglik = target.log_likelihood(state.theta);
  state.logprior = target.log_prior(state.theta);
  return state;
}

void mh_step(ReplicaState& state, const Target& target,
             const ProposalConfig& config, bool temper_prior) {
  const ProposalKind kind = select_kind(config, state.rng);
  Proposal proposal =
      kind == ProposalKind::Langevin
          ? propose_langevin(state.theta, target, config, state.rng)
          : propose_random_walk(state.theta, target.eta_slot(), config,
                                state.rng);

  const double loglik_p = target.log_likelihood(proposal.candidate);
  const double logprior_p = target.log_prior(proposal.candidate);

  double log_alpha;
  if (!std::isfinite(loglik_p) || !std::isfinite(logprior_p) ||
      !std::isfinite(proposal.log_q_correction)) {
    log_alpha = -std::numeric_limits<double>::infinity();
    ++state.failed;
  } else {
    const double prior_scale = temper_prior ? state.beta : 1.0;
    log_alpha = state.beta * (loglik_p - state.loglik) +
                prior_scale * (logprior_p - state.logprior) +
                proposal.log_q_correction;
  }

  ++state.proposed;
  // u is always drawn so the stream advances identically on every path
  const double u = state.rng.uniform();
  if (std::log(u) < log_alpha) {
    state.theta = std::move(proposal.candidate);
    state.loglik = loglik_p;
    state.logprior = logprior_p;
    ++state.accepted;
  }
  state.history.push_back(
      {state.theta, state.loglik, state.logprior, state.beta, state.local_phase});
}

void run_segment(ReplicaState& state, const Target& target,
                 const ProposalConfig& config, std::size_t n_steps,
                 std::size_t tempered_until, bool temper_prior) {
  for (std::size_t k = 0; k < n_steps; ++k) {
    state.local_phase = state.history.size() >= tempered_until;
    state.beta = state.local_phase ? 1.0 : 1.0 / state.temperature;
    mh_step(state, target, config, temper_prior);
  }
}

}  // namespace ptbnn
