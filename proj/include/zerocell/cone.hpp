#pragma once

#include <Eigen/Dense>

#include "zerocell/angles.hpp"
#include "zerocell/rng.hpp"

namespace zerocell::montecarlo {

/// Uniform point on the unit sphere S^{d-1}.
Eigen::VectorXd sample_sphere(int d, Rng& rng);
/// Uniform point on the upper half-sphere {x_1 >= 0}.
Eigen::VectorXd sample_halfsphere(int d, Rng& rng);

/// d x (d + ell) matrix whose columns are the generators of a random cone.
Eigen::MatrixXd sample_cone_generators(const angles::ConeSpec& spec, Rng& rng);

struct NnlsResult {
  Eigen::VectorXd coefficients;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// min ||A x - b|| subject to x >= 0 (Lawson-Hanson active set). The entering
/// index is the largest dual component, ties broken by the lowest index.
/// Throws NumericError (with the instance in the message) if the iteration
/// cap 3 * cols is exceeded.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/// True iff x is within tol * ||x|| of the positive hull of the columns of
/// `generators`.
bool cone_contains(const Eigen::MatrixXd& generators, const Eigen::VectorXd& x,
                   double tol = 1e-9);

struct SolidAngleEstimate {
  long long hits = 0;
  long long trials = 0;
  double estimate = 0.0;
  /// sqrt(estimate (1 - estimate) / trials)
  double std_error = 0.0;
};

/// Hit-or-miss estimate of the normalized solid angle of pos(generators).
SolidAngleEstimate estimate_solid_angle(const Eigen::MatrixXd& generators, long long trials,
                                        Rng& rng);

}  // namespace zerocell::montecarlo
