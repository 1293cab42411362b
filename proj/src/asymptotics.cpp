#include "zerocell/asymptotics.hpp"

#include <cmath>
#include <string>

#include "zerocell/angles.hpp"
#include "zerocell/anumbers.hpp"
#include "zerocell/facecounts.hpp"

namespace zerocell::asymptotics {

using numerics::kPi;
using numerics::log_factorial;
using numerics::log_gamma;

namespace {

void require_open_unit(double lambda, const char* what) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw DomainError(std::string(what) + ": lambda must lie in (0, 1)");
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double a_number_limit_constant(int k) {
  if (k < 0 && k % 2 == 0) return 0.0;
  return 1.0 / (std::pow(6.0, 0.5 * k) * std::tgamma(0.5 * k + 1.0));
}

double log_zero_cell_facecount_asymptotic(double d, int k) {
  if (k < 1) throw DomainError("zero-cell asymptotic: k must be >= 1");
  if (!(d > 0)) throw DomainError("zero-cell asymptotic: d must be positive");
  return 1.5 * k * std::log(d) - log_factorial(k) - log_gamma(0.5 * k + 1.0) +
         k * (std::log(kPi) - 0.5 * std::log(6.0));
}

double zero_cell_facecount_asymptotic(double d, int k) {
  return std::exp(log_zero_cell_facecount_asymptotic(d, k));
}

double log_poisson_polyhedron_facecount_asymptotic(double d, int k, double alpha) {
  if (k < 1) throw DomainError("polyhedron asymptotic: k must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("polyhedron asymptotic: alpha must be positive");
  if (!(d > 0)) throw DomainError("polyhedron asymptotic: d must be positive");
  const double log_base = std::log(alpha) + 0.5 * std::log(kPi) + log_gamma(alpha / 2.0) -
                          log_gamma((alpha + 1.0) / 2.0) -
                          0.5 * alpha * std::log(2.0 + 4.0 / alpha);
  return k * (1.0 + alpha / 2.0) * std::log(d) - log_factorial(k) -
         log_gamma(alpha * k / 2.0 + 1.0) + k * log_base;
}

double poisson_polyhedron_facecount_asymptotic(double d, int k, double alpha) {
  return std::exp(log_poisson_polyhedron_facecount_asymptotic(d, k, alpha));
}

double log_fixed_coface_asymptotic(double d, int ell, double alpha) {
  if (ell < 0) throw DomainError("fixed-coface asymptotic: ell must be >= 0");
  if (!(alpha > 0.0)) throw DomainError("fixed-coface asymptotic: alpha must be positive");
  if (!(d > 0)) throw DomainError("fixed-coface asymptotic: d must be positive");
  return 0.5 * std::log(alpha) - (ell - 0.5) * std::log(2.0) +
         d * (log_gamma(alpha / 2.0) - log_gamma((alpha + 1.0) / 2.0)) +
         (d - 1.0) * (0.5 * std::log(kPi) + std::log(alpha)) - log_factorial(ell) +
         (ell - 0.5) * std::log(d);
}

double fixed_coface_asymptotic(double d, int ell, double alpha) {
  return std::exp(log_fixed_coface_asymptotic(d, ell, alpha));
}

double fixed_coface_ratio(double d, int ell) {
  if (ell < 0) throw DomainError("fixed-coface ratio: ell must be >= 0");
  return std::exp(ell * std::log(d / 2.0) - log_factorial(ell));
}

double crosspolytope_coface_ratio(int d, int ell) {
  if (d < 1 || ell < 0 || ell > d - 1) throw DomainError("crosspolytope ratio: 0 <= ell < d");
  return std::exp(numerics::log_binomial(d, ell) - ell * std::log(2.0));
}

double psi(double lambda) {
  require_open_unit(lambda, "psi");
  const double target = 1.0 - lambda;
  return numerics::bisect_root([target](double y) { return y / std::tan(y) - target; },
                               1e-12, kPi / 2.0 - 1e-12, 0.0);
}

double entropy(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("entropy: lambda must lie in [0, 1]");
  return -xlogx(lambda) - xlogx(1.0 - lambda);
}

ProfilePoint profile_point(double lambda) {
  require_open_unit(lambda, "exponential_profile");
  const double p = psi(lambda);
  const double value = lambda * std::log(kPi) + entropy(lambda) +
                       (1.0 - lambda) * std::log(p) - std::log(std::sin(p));
  return {lambda, p, value};
}

double exponential_profile(double lambda) { return profile_point(lambda).value; }

std::vector<ProfilePoint> profile_grid(int points) {
  if (points < 1) throw DomainError("profile grid: need at least one point");
  std::vector<ProfilePoint> grid;
  grid.reserve(points);
  for (int i = 1; i <= points; ++i) grid.push_back(profile_point(static_cast<double>(i) / (points + 1)));
  return grid;
}

Maximum profile_maximizer(double tol) {
  return numerics::maximize_unimodal(exponential_profile, 0.01, 0.99, tol);
}

double second_moment_profile(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw DomainError("second_moment_profile: lambda must lie in [0, 1]");
  return std::log(2.0) + lambda * std::log(kPi / 2.0) + entropy(lambda);
}

Maximum second_moment_profile_max(double tol) {
  return numerics::maximize_unimodal(second_moment_profile, 0.01, 0.99, tol);
}

double ball_volume(int j) {
  if (j < 0) throw DomainError("ball_volume: dimension must be >= 0");
  return std::exp(0.5 * j * std::log(kPi) - log_gamma(0.5 * j + 1.0));
}

double p_k(int k) {
  if (k < 0) throw DomainError("p_k: k must be >= 0");
  return std::exp(0.5 * k * std::log(kPi) - k * std::log(2.0) - log_gamma(0.5 * k + 1.0));
}

CubeSimplexProfile cube_simplex_profiles(double lambda) {
  require_open_unit(lambda, "cube_simplex_profiles");
  const double h = entropy(lambda);
  return {std::log(2.0) * (1.0 - lambda) + h, h};
}

Quantity parse_quantity(std::string_view name) {
  if (name == "a") return Quantity::a_number;
  if (name == "zerocell") return Quantity::zero_cell;
  if (name == "poly") return Quantity::poisson_poly;
  if (name == "coface") return Quantity::fixed_coface;
  if (name == "wendel") return Quantity::wendel_angle;
  if (name == "angle") return Quantity::halfsphere_angle;
  if (name == "secmoment") return Quantity::second_moment;
  throw DomainError("unknown quantity '" + std::string(name) + "'");
}

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::a_number: return "a";
    case Quantity::zero_cell: return "zerocell";
    case Quantity::poisson_poly: return "poly";
    case Quantity::fixed_coface: return "coface";
    case Quantity::wendel_angle: return "wendel";
    case Quantity::halfsphere_angle: return "angle";
    case Quantity::second_moment: return "secmoment";
  }
  return "?";
}

std::vector<ConvergenceRow> convergence_table(Quantity quantity, const QuantityParams& params,
                                              const std::vector<int>& d_list,
                                              const QuadratureSettings& settings) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(d_list.size());
  for (int d : d_list) {
    // Both sides as (sign, log|.|) so the ratio survives over/underflow.
    double log_exact = 0.0, log_asym = 0.0;
    int sign_exact = 1, sign_asym = 1;
    switch (quantity) {
      case Quantity::a_number: {
        if (params.k < 0 && params.k % 2 == 0)
          throw DomainError("convergence table: A[d,k] vanishes for even negative k");
        const auto a = anumbers::a_number_scaled({d, params.k}, settings);
        log_exact = a.log_abs();
        sign_exact = a.sign();
        const double c = a_number_limit_constant(params.k);
        log_asym = 1.5 * params.k * std::log(d) + std::log(std::abs(c));
        sign_asym = c < 0 ? -1 : 1;
        break;
      }
      case Quantity::zero_cell: {
        const auto e = facecounts::zero_cell_expected_faces_scaled(d, d - params.k, settings);
        log_exact = e.log_abs();
        sign_exact = e.sign();
        log_asym = log_zero_cell_facecount_asymptotic(d, params.k);
        break;
      }
      case Quantity::poisson_poly: {
        const auto e = facecounts::poisson_polyhedron_expected_faces_scaled(d, params.k,
                                                                            params.alpha, settings);
        log_exact = e.log_abs();
        sign_exact = e.sign();
        log_asym = log_poisson_polyhedron_facecount_asymptotic(d, params.k, params.alpha);
        break;
      }
      case Quantity::fixed_coface: {
        const auto e = facecounts::poisson_polyhedron_expected_faces_scaled(
            d, d - params.ell, params.alpha, settings);
        log_exact = e.log_abs();
        sign_exact = e.sign();
        log_asym = log_fixed_coface_asymptotic(d, params.ell, params.alpha);
        break;
      }
      case Quantity::wendel_angle:
        log_exact = std::log(angles::wendel_angle(d, params.ell));
        log_asym = std::log(angles::wendel_angle_asymptotic(d, params.ell));
        break;
      case Quantity::halfsphere_angle: {
        const auto e = angles::halfsphere_angle_exact_scaled(d, params.ell, settings);
        log_exact = e.log_abs();
        sign_exact = e.sign();
        log_asym = angles::log_halfsphere_angle_asymptotic(d, params.ell);
        break;
      }
      case Quantity::second_moment: {
        const double v = facecounts::log_typical_cell_vertex_second_moment(d) / d;
        rows.push_back({d, v, std::log(kPi + 2.0), v / std::log(kPi + 2.0)});
        continue;
      }
    }
    ConvergenceRow row;
    row.d = d;
    row.exact = sign_exact * std::exp(log_exact);
    row.asymptotic = sign_asym * std::exp(log_asym);
    row.ratio = sign_exact * sign_asym * std::exp(log_exact - log_asym);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zerocell::asymptotics
