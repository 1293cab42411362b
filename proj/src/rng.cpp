#include "zerocell/rng.hpp"

#include <cmath>

namespace zerocell::montecarlo {

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  x = (x ^ (x >> 27)) * UINT64_C(0x94D049BB133111EB);
  return x ^ (x >> 31);
}

RngSeed derive_substream(RngSeed parent, std::uint64_t index) {
  return {parent.seed, mix64(parent.stream_id + UINT64_C(0x9E3779B97F4A7C15) * (index + 1))};
}

namespace {

std::mt19937_64 keyed_engine(RngSeed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.seed),
                    static_cast<std::uint32_t>(seed.seed >> 32),
                    static_cast<std::uint32_t>(seed.stream_id),
                    static_cast<std::uint32_t>(seed.stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(RngSeed seed) : engine_(keyed_engine(seed)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open_low() { return 1.0 - uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double Rng::exponential(double rate) { return -std::log(uniform_open_low()) / rate; }

}  // namespace zerocell::montecarlo
