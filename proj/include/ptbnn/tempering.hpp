#pragma once

#include <cstdint>
#include <vector>

#include "ptbnn/replica.hpp"
#include "ptbnn/target.hpp"

namespace ptbnn {

// Geometric ladder T_i = max_temp^((i-1)/(R-1)), endpoints exact.
struct TemperatureLadder {
  std::vector<double> temps;
  double max_temp = 1.0;

  std::size_t size() const { return temps.size(); }
};

TemperatureLadder build_ladder(std::size_t replicas, double max_temp);

// Two-phase schedule: tempered (global) exploration for the first
// global_fraction of each replica's samples, then everything at T = 1.
struct PhaseSchedule {
  double global_fraction = 0.6;

  /// Number of leading per-replica sample indices that run tempered.
  std::size_t tempered_steps(std::size_t total_per_replica) const;
};

/// Effective inverse temperature for a replica at a per-replica sample index.
double effective_beta(const TemperatureLadder& ladder,
                      std::size_t replica_index, std::size_t sample_index,
                      std::size_t total_samples, const PhaseSchedule& schedule);

struct SwapStats {
  std::uint64_t attempted = 0;
  std::uint64_t accepted = 0;

  double percent() const {
    return attempted == 0 ? 0.0
                          : 100.0 * static_cast<double>(accepted) /
                                static_cast<double>(attempted);
  }
};

/// One deterministic sweep over adjacent pairs (lowest pair first). Swaps
/// exchange parameter vectors and cached likelihood/prior; temperatures stay
/// attached to their slots. All replicas must be at the same history length.
void attempt_swaps(std::vector<ReplicaState>& states, RngStream& coordinator,
                   SwapStats& stats, bool temper_prior = false);

struct OrchestratorConfig {
  std::size_t replicas = 10;
  std::size_t total_samples = 100000;
  // false: total_samples is the budget across all replicas (each chain runs
  // total/replicas steps); true: every replica runs total_samples steps
  bool samples_per_replica = false;
  std::size_t swap_interval = 100;
  double max_temp = 10.0;
  PhaseSchedule schedule;
  std::uint64_t seed = 1;
  double init_std = 0.5;
  bool temper_prior = false;
  bool parallel = true;  // false: single-threaded reference mode

  void validate() const;
  std::size_t steps_per_replica() const;
};

struct RunResult {
  std::vector<ReplicaState> replicas;
  SwapStats swaps;
  double elapsed_seconds = 0.0;
  std::size_t steps_per_replica = 0;
  std::size_t tempered_steps = 0;  // per replica

  double accept_percent() const;
};

/// Full parallel-tempering run: R replicas advance swap_interval steps per
/// segment (one worker thread each in parallel mode), then the coordinator
/// sweeps neighbor swaps; repeats until every chain holds steps_per_replica
/// samples. Bit-identical output in parallel and reference modes.
RunResult run(const OrchestratorConfig& config, const Target& target,
              const ProposalConfig& proposal);

}  // namespace ptbnn
