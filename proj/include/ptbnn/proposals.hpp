#pragma once

#include <optional>

#include "ptbnn/network.hpp"
#include "ptbnn/rng.hpp"
#include "ptbnn/target.hpp"

namespace ptbnn {

enum class ProposalKind { RandomWalk, Langevin };

struct ProposalConfig {
  ProposalKind kind = ProposalKind::RandomWalk;
  double step_weights = 0.025;  // noise std-dev for weight/bias slots
  double step_eta = 0.2;        // noise std-dev for the eta slot
  double learn_rate = 0.1;      // Langevin drift step r
  double lg_freq = 0.5;         // probability a Langevin step uses the drift

  void validate() const;  // throws Error("config", ...)
};

struct Proposal {
  ParamVector candidate;
  // log q(current | candidate) - log q(candidate | current), the additive
  // Hastings term; exactly 0 for symmetric kernels.
  double log_q_correction = 0.0;
};

/// Which kernel a Langevin-configured sampler uses this step. Consumes a
/// uniform draw only when lg_freq is strictly inside (0,1), so the stream
/// stays aligned with a pure random-walk run at the boundaries.
ProposalKind select_kind(const ProposalConfig& config, RngStream& rng);

/// Symmetric Gaussian perturbation; step_eta applies to the eta slot.
Proposal propose_random_walk(const ParamVector& current,
                             std::optional<std::size_t> eta_slot,
                             const ProposalConfig& config, RngStream& rng);

/// Gaussian proposal centered at current - r * error_gradient(current), with
/// the exact asymmetric correction (one extra gradient at the candidate).
/// Noise draws match propose_random_walk slot for slot.
Proposal propose_langevin(const ParamVector& current, const Target& target,
                          const ProposalConfig& config, RngStream& rng);

}  // namespace ptbnn
