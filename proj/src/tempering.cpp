#include "ptbnn/tempering.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "ptbnn/errors.hpp"

namespace ptbnn {

TemperatureLadder build_ladder(std::size_t replicas, double max_temp) {
  if (replicas < 1) throw Error("config", "ladder needs at least one replica");
  if (max_temp < 1.0) throw Error("config", "max_temp must be at least 1");

  TemperatureLadder ladder;
  ladder.max_temp = max_temp;
  ladder.temps.resize(replicas);
  ladder.temps[0] = 1.0;
  for (std::size_t i = 1; i < replicas; ++i)
    ladder.temps[i] = std::pow(
        max_temp, static_cast<double>(i) / static_cast<double>(replicas - 1));
  if (replicas > 1) ladder.temps[replicas - 1] = max_temp;  // endpoint exact
  return ladder;
}

std::size_t PhaseSchedule::tempered_steps(std::size_t total_per_replica) const {
  // count of indices k in [0, total) with k < global_fraction * total
  const double threshold =
      global_fraction * static_cast<double>(total_per_replica);
  if (threshold <= 0.0) return 0;
  const auto cut = static_cast<std::size_t>(std::ceil(threshold));
  return std::min(cut, total_per_replica);
}

double effective_beta(const TemperatureLadder& ladder,
                      std::size_t replica_index, std::size_t sample_index,
                      std::size_t total_samples, const PhaseSchedule& schedule) {
  if (replica_index >= ladder.size())
    throw Error("orchestrator", "replica index outside the ladder");
  const bool tempered =
      static_cast<double>(sample_index) <
      schedule.global_fraction * static_cast<double>(total_samples);
  return tempered ? 1.0 / ladder.temps[replica_index] : 1.0;
}

void attempt_swaps(std::vector<ReplicaState>& states, RngStream& coordinator,
                   SwapStats& stats, bool temper_prior) {
  for (std::size_t i = 1; i < states.size(); ++i)
    if (states[i].history.size() != states[0].history.size())
      throw Error("orchestrator",
                  "swap attempted before all replicas reached the barrier");

  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    ReplicaState& a = states[i];
    ReplicaState& b = states[i + 1];
    double log_alpha = (a.beta - b.beta) * (b.loglik - a.loglik);
    if (temper_prior)
      log_alpha += (a.beta - b.beta) * (b.logprior - a.logprior);
    ++stats.attempted;
    const double u = coordinator.uniform();
    if (std::log(u) < log_alpha) {
      std::swap(a.theta, b.theta);
      std::swap(a.loglik, b.loglik);
      std::swap(a.logprior, b.logprior);
      ++stats.accepted;
    }
  }
}

void OrchestratorConfig::validate() const {
  if (replicas < 1) throw Error("config", "replicas must be at least 1");
  if (swap_interval < 1) throw Error("config", "swap_interval must be at least 1");
  if (max_temp < 1.0) throw Error("config", "max_temp must be at least 1");
  if (schedule.global_fraction < 0.0 || schedule.global_fraction > 1.0)
    throw Error("config", "global_fraction must lie in [0,1]");
  if (init_std <= 0.0) throw Error("config", "init_std must be positive");
  if (steps_per_replica() < 1)
    throw Error("config", "sample budget leaves replicas with no steps");
}

std::size_t OrchestratorConfig::steps_per_replica() const {
  return samples_per_replica ? total_samples : total_samples / replicas;
}

double RunResult::accept_percent() const {
  std::uint64_t acc = 0, prop = 0;
  for (const ReplicaState& r : replicas) {
    acc += r.accepted;
    prop += r.proposed;
  }
  return prop == 0 ? 0.0
                   : 100.0 * static_cast<double>(acc) / static_cast<double>(prop);
}

RunResult run(const OrchestratorConfig& config, const Target& target,
              const ProposalConfig& proposal) {
  config.validate();
  proposal.validate();

  const auto start = std::chrono::steady_clock::now();
  const TemperatureLadder ladder = build_ladder(config.replicas, config.max_temp);
  const std::size_t steps = config.steps_per_replica();
  const std::size_t tempered = config.schedule.tempered_steps(steps);

  RunResult result;
  result.steps_per_replica = steps;
  result.tempered_steps = tempered;
  result.replicas.reserve(config.replicas);
  for (std::size_t m = 0; m < config.replicas; ++m)
    result.replicas.push_back(make_replica(m, ladder.temps[m],
                                           derive_seed(config.seed, m), target,
                                           config.init_std));
  // the coordinator's stream is the one after the replicas'
  RngStream coordinator(derive_seed(config.seed, config.replicas));

  std::size_t done = 0;
  while (done < steps) {
    const std::size_t n = std::min(config.swap_interval, steps - done);
    if (config.parallel && config.replicas > 1) {
      std::vector<std::thread> workers;
      std::vector<std::exception_ptr> failures(config.replicas);
      workers.reserve(config.replicas);
      for (std::size_t m = 0; m < config.replicas; ++m)
        workers.emplace_back([&, m] {
          try {
            run_segment(result.replicas[m], target, proposal, n, tempered,
                        config.temper_prior);
          } catch (...) {
            failures[m] = std::current_exception();
          }
        });
      for (std::thread& w : workers) w.join();
      for (std::size_t m = 0; m < config.replicas; ++m) {
        if (!failures[m]) continue;
        std::string detail = "unknown failure";
        try {
          std::rethrow_exception(failures[m]);
        } catch (const std::exception& e) {
          detail = e.what();
        }
        throw Error("orchestrator",
                    "replica " + std::to_string(m) + " failed after " +
                        std::to_string(result.replicas[m].history.size()) +
                        " samples: " + detail);
      }
    } else {
      for (ReplicaState& state : result.replicas)
        run_segment(state, target, proposal, n, tempered, config.temper_prior);
    }
    done += n;
    attempt_swaps(result.replicas, coordinator, result.swaps,
                  config.temper_prior);
  }

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace ptbnn
