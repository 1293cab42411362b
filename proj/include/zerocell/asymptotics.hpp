#pragma once

#include <string_view>
#include <vector>

#include "zerocell/numerics.hpp"

namespace zerocell::asymptotics {

using numerics::Maximum;
using numerics::QuadratureSettings;

/// lim A[d,k] / d^{3k/2} = 1 / (6^{k/2} Gamma(k/2 + 1)); zero at the poles
/// k = -2, -4, ...
double a_number_limit_constant(int k);

/// Fixed-codimension zero-cell asymptotics:
/// E f_{d-k}(Z_d) ~ d^{3k/2} / (k! Gamma(k/2+1)) (pi / sqrt 6)^k, k >= 1.
double zero_cell_facecount_asymptotic(double d, int k);
double log_zero_cell_facecount_asymptotic(double d, int k);

/// E f_{k-1}(conv Pi_{d,alpha}) ~ d^{k(1+alpha/2)} / (k! Gamma(alpha k/2 + 1))
///   * (alpha sqrt(pi) Gamma(alpha/2) / (Gamma((alpha+1)/2) (2 + 4/alpha)^{alpha/2}))^k.
double poisson_polyhedron_facecount_asymptotic(double d, int k, double alpha);
double log_poisson_polyhedron_facecount_asymptotic(double d, int k, double alpha);

/// E f_{d-ell-1}(conv Pi_{d,alpha}) for fixed ell.
double fixed_coface_asymptotic(double d, int ell, double alpha);
double log_fixed_coface_asymptotic(double d, int ell, double alpha);
/// Ratio of the ell-th to the 0-th fixed-coface asymptotic: (d/2)^ell / ell!.
double fixed_coface_ratio(double d, int ell);
/// f_{d-ell-1}(C_d) / f_{d-1}(C_d) = C(d, ell) / 2^ell for the crosspolytope.
double crosspolytope_coface_ratio(int d, int ell);

/// Unique psi in (0, pi/2) with 1 - lambda = psi cot psi.
double psi(double lambda);

struct ProfilePoint {
  double lambda = 0.0;
  double psi = 0.0;
  double value = 0.0;
};

/// Limit of (1/d) log E f_{d-k}(Z_d) along k ~ lambda d:
/// lambda log pi - H(lambda) + (1-lambda) log psi - log sin psi.
double exponential_profile(double lambda);
ProfilePoint profile_point(double lambda);
/// lambda_i = i / (points + 1), i = 1..points.
std::vector<ProfilePoint> profile_grid(int points);
Maximum profile_maximizer(double tol = 1e-10);

/// I(lambda) = log 2 + lambda log(pi/2) - lambda log lambda - (1-lambda) log(1-lambda),
/// defined on [0, 1] by continuity.
double second_moment_profile(double lambda);
Maximum second_moment_profile_max(double tol = 1e-10);

/// Volume of the j-dimensional unit ball.
double ball_volume(int j);
/// Volume of the k-ball of radius 1/2.
double p_k(int k);

struct CubeSimplexProfile {
  double cube = 0.0;
  double simplex = 0.0;
};
CubeSimplexProfile cube_simplex_profiles(double lambda);

/// Binary entropy in nats with 0 log 0 = 0.
double entropy(double lambda);

enum class Quantity {
  a_number,         // A[d,k] vs the limit constant
  zero_cell,        // E f_{d-k}(Z_d)
  poisson_poly,     // E f_{k-1}(conv Pi_{d,alpha})
  fixed_coface,     // E f_{d-ell-1}(conv Pi_{d,alpha})
  wendel_angle,     // E alpha(D_{d+ell,d})
  halfsphere_angle, // E alpha(C_{d+ell,d})
  second_moment,    // (1/d) log E f_0^2 of the typical cell vs log(pi + 2)
};

Quantity parse_quantity(std::string_view name);
std::string_view quantity_name(Quantity q);

struct QuantityParams {
  int k = 1;
  int ell = 0;
  double alpha = 1.0;
};

struct ConvergenceRow {
  int d = 0;
  double exact = 0.0;
  double asymptotic = 0.0;
  /// exact / asymptotic, formed in log space.
  double ratio = 0.0;
};

std::vector<ConvergenceRow> convergence_table(Quantity quantity, const QuantityParams& params,
                                              const std::vector<int>& d_list,
                                              const QuadratureSettings& settings = {});

}  // namespace zerocell::asymptotics
