#pragma once

#include <cstdint>
#include <random>

namespace rnaicgf {

/// Portable seeded generator: std::mt19937_64 (fully specified by the
/// standard) whose seed is first scrambled with SplitMix64. Floating-point
/// draws are built from raw 64-bit outputs, never from std distributions,
/// so streams are identical across standard libraries.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Exponential waiting time with the given rate (> 0), by inverse transform.
  double exponential(double rate);

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` of an ensemble. Trial 0 uses the master seed itself.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

}  // namespace rnaicgf
