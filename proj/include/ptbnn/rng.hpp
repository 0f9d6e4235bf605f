#pragma once

#include <cstdint>
#include <random>

namespace ptbnn {

// Private random stream, one per replica plus one for the swap coordinator.
// Each stream is owned by a single worker at a time, so no locking.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw on [0,1).
  double uniform() { return unit_(engine_); }

  /// Zero-mean Gaussian draw with the given standard deviation.
  double gaussian(double stddev) { return stddev * normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

// splitmix64 finalizer; decorrelates the per-replica streams derived from one
// master seed so runs are reproducible for a fixed (seed, replica count).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream_id + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace ptbnn
