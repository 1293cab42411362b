#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zerocell/angles.hpp"
#include "zerocell/rng.hpp"

namespace zerocell::montecarlo {

/// How replications are split: replication block s (of `streams`) draws from
/// derive_substream(seed, s). Results depend on seed and streams only, never
/// on the number of worker threads.
struct ReplicationPlan {
  RngSeed seed;
  int streams = 1;
  /// 0 selects ZEROCELL_THREADS or the hardware concurrency.
  int threads = 0;
  void validate() const;
};

int resolve_thread_count(int requested, int streams);

struct SimulationReport {
  std::string experiment;
  std::vector<std::pair<std::string, double>> params;
  RngSeed seed;
  int streams = 1;
  long long n = 0;
  std::vector<std::string> labels;
  std::vector<double> estimates;
  std::vector<double> std_error;
  std::vector<double> exact;
  /// (estimate - exact) / std_error; NaN when std_error is zero.
  std::vector<double> z;
  std::vector<std::pair<std::string, double>> diagnostics;

  /// {params, seed, stream, n, estimates, stderr, exact, z, ...} with keys in a
  /// fixed order. Numbers are rounded to `precision` significant digits, or
  /// written in shortest round-trip form when precision is 0; non-finite ones
  /// are written as null.
  std::string to_json(int precision = 0) const;
};

/// Two-stage estimate of E alpha(cone): `cones` random cones, each measured
/// with `trials_per_cone` hit-or-miss directions.
SimulationReport estimate_expected_angle(const angles::ConeSpec& spec, long long cones,
                                         long long trials_per_cone, const ReplicationPlan& plan);

/// Mean f-vector of simulated zero cells, d in {2, 3}.
SimulationReport estimate_zero_cell_fvector(int d, long long samples, const ReplicationPlan& plan);

/// Mean f-vector of simulated Poisson polyhedra, d in {2, 3}.
SimulationReport estimate_poisson_polyhedron_fvector(int d, double alpha, long long samples,
                                                     const ReplicationPlan& plan);

}  // namespace zerocell::montecarlo
