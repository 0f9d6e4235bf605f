#pragma once

#include <cstdint>
#include <vector>

#include "ptbnn/proposals.hpp"
#include "ptbnn/rng.hpp"
#include "ptbnn/target.hpp"

namespace ptbnn {

// One chain entry, appended every step whether or not the proposal was
// accepted.
struct SampleRecord {
  ParamVector theta;
  double loglik = 0.0;    // untempered
  double logprior = 0.0;
  double beta = 1.0;      // effective inverse temperature at this step
  bool local_phase = false;
};

// One tempered chain. Owned by a single worker at a time; transferable
// between threads at swap barriers but never shared concurrently.
struct ReplicaState {
  std::size_t id = 0;
  double temperature = 1.0;  // ladder slot temperature, fixed for the run
  double beta = 1.0;         // effective beta for the current step
  bool local_phase = false;
  ParamVector theta;
  double loglik = 0.0;   // cached untempered log-likelihood at theta
  double logprior = 0.0; // cached log-prior at theta
  std::uint64_t accepted = 0;
  std::uint64_t proposed = 0;
  std::uint64_t failed = 0;  // auto-rejected non-finite proposals
  RngStream rng;
  std::vector<SampleRecord> history;

  explicit ReplicaState(std::uint64_t seed) : rng(seed) {}
};

/// Fresh replica: weights/biases drawn i.i.d. Normal(0, init_std^2) from the
/// replica's own stream, eta (if any) started at 0, caches computed.
ReplicaState make_replica(std::size_t id, double temperature,
                          std::uint64_t seed, const Target& target,
                          double init_std);

/// One Metropolis-Hastings step at the state's current effective beta.
/// Tempering applies to the log-likelihood; the prior enters untempered
/// unless temper_prior is set. Appends the post-decision sample to history.
void mh_step(ReplicaState& state, const Target& target,
             const ProposalConfig& config, bool temper_prior = false);

/// Applies mh_step exactly n_steps times. Before each step the effective
/// beta is 1/temperature while the per-replica sample index is below
/// tempered_until, and 1 afterwards (the local phase).
void run_segment(ReplicaState& state, const Target& target,
                 const ProposalConfig& config, std::size_t n_steps,
                 std::size_t tempered_until, bool temper_prior = false);

}  // namespace ptbnn
