#pragma once

#include <cstdint>
#include <random>

namespace zerocell::montecarlo {

/// (seed, stream_id) fully determines every sample drawn from an Rng.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Bijective 64-bit mixer (the SplitMix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

/// Substream `index` of `parent`: same seed, stream id
/// mix64(parent.stream_id + 0x9E3779B97F4A7C15 * (index + 1)).
/// The map index -> stream id is injective because the multiplier is odd
/// and mix64 is a bijection.
RngSeed derive_substream(RngSeed parent, std::uint64_t index);

/// mt19937_64 keyed by (seed, stream_id) through std::seed_seq. Uniform,
/// normal and exponential variates are produced here rather than by the
/// standard distributions so the streams are identical across library
/// implementations.
class Rng {
 public:
  explicit Rng(RngSeed seed);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Exponential with the given rate.
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace zerocell::montecarlo
