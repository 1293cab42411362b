#include "zerocell/facecounts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace zerocell::facecounts {

using numerics::kPi;

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw DomainError("face count does not fit in 64 bits");
  return out;
}

std::uint64_t pow2(int e) {
  if (e >= 64) throw DomainError("face count does not fit in 64 bits");
  return std::uint64_t{1} << e;
}

}  // namespace

double FVector::euler_sum() const {
  double sum = 0.0;
  for (std::size_t l = 0; l < counts.size(); ++l) sum += (l % 2 == 0 ? 1.0 : -1.0) * counts[l];
  return sum;
}

void FVector::check(double rel_tol) const {
  if (counts.size() != static_cast<std::size_t>(dim) + 1)
    throw NumericError("FVector: expected dim + 1 entries");
  double scale = 1.0;
  for (double c : counts) {
    if (!std::isfinite(c) || c < 0.0) throw NumericError("FVector: entry not finite/nonnegative");
    scale = std::max(scale, c);
  }
  const double residual = std::abs(euler_sum() - 1.0);
  if (residual > rel_tol * scale) {
    std::ostringstream msg;
    msg << "FVector: Euler relation off by " << residual;
    throw NumericError(msg.str());
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max())
      throw DomainError("binomial coefficient does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

ScaledReal zero_cell_expected_faces_scaled(int d, int ell, const QuadratureSettings& settings) {
  if (d < 1) throw DomainError("zero cell: d must be positive");
  if (ell < 0 || ell > d - 1) throw DomainError("zero cell: face dimension must lie in 0..d-1");
  const int k = d - ell;
  const auto a = anumbers::a_number_scaled({d, k}, settings);
  return a.scaled_by_log(k * std::log(kPi) - numerics::log_factorial(k));
}

double zero_cell_expected_faces(int d, int ell, const QuadratureSettings& settings) {
  return zero_cell_expected_faces_scaled(d, ell, settings).value();
}

FVector zero_cell_fvector(int d, const QuadratureSettings& settings) {
  if (d < 1) throw DomainError("zero cell: d must be positive");
  FVector out{d, std::vector<double>(static_cast<std::size_t>(d) + 1, 1.0)};
  for (int ell = 0; ell < d; ++ell) out.counts[ell] = zero_cell_expected_faces(d, ell, settings);
  return out;
}

ScaledReal poisson_polyhedron_expected_faces_scaled(int d, int k, double alpha,
                                                    const QuadratureSettings& settings,
                                                    anumbers::Contour contour) {
  if (d < 1) throw DomainError("Poisson polyhedron: d must be positive");
  if (k < 1 || k > d) throw DomainError("Poisson polyhedron: k must lie in 1..d");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("Poisson polyhedron: alpha must be positive");
  const auto t = anumbers::t_number_scaled({d, k, alpha}, settings, contour);
  const double log_const = 0.5 * std::log(kPi) + numerics::log_gamma(alpha / 2.0) -
                           numerics::log_gamma((alpha + 1.0) / 2.0);
  return t.scaled_by_log(d * std::log(alpha) + numerics::log_binomial(d, k) + k * log_const);
}

double poisson_polyhedron_expected_faces(int d, int k, double alpha,
                                         const QuadratureSettings& settings,
                                         anumbers::Contour contour) {
  return poisson_polyhedron_expected_faces_scaled(d, k, alpha, settings, contour).value();
}

FVector poisson_polyhedron_fvector(int d, double alpha, const QuadratureSettings& settings) {
  FVector out{d, std::vector<double>(static_cast<std::size_t>(d) + 1, 1.0)};
  for (int k = 1; k <= d; ++k)
    out.counts[k - 1] = poisson_polyhedron_expected_faces(d, k, alpha, settings);
  return out;
}

double typical_cell_expected_faces(int d, int k) {
  if (d < 1 || k < 0 || k > d) throw DomainError("typical cell: require 0 <= k <= d");
  const double log_value = (d - k) * std::log(2.0) + numerics::log_binomial(d, k);
  if (log_value < 53.0 * std::log(2.0) - 1.0)
    return static_cast<double>(typical_cell_expected_faces_exact(d, k));
  return std::exp(log_value);
}

std::uint64_t typical_cell_expected_faces_exact(int d, int k) {
  if (d < 1 || k < 0 || k > d) throw DomainError("typical cell: require 0 <= k <= d");
  return reference_fvector(Shape::cube, d, k);
}

double log_typical_cell_vertex_second_moment(int d) {
  if (d < 1) throw DomainError("second moment: d must be positive");
  std::vector<double> terms(static_cast<std::size_t>(d) + 1);
  const double head = d * std::log(2.0) + numerics::log_factorial(d);
  for (int j = 0; j <= d; ++j) {
    const double log_kappa = 0.5 * j * std::log(kPi) - numerics::log_gamma(0.5 * j + 1.0);
    terms[j] = head + 2.0 * log_kappa - j * std::log(4.0) - numerics::log_factorial(d - j);
  }
  return numerics::log_sum_exp(terms.data(), terms.size());
}

double typical_cell_vertex_second_moment(int d) {
  return std::exp(log_typical_cell_vertex_second_moment(d));
}

Shape parse_shape(std::string_view name) {
  if (name == "cube") return Shape::cube;
  if (name == "simplex") return Shape::simplex;
  if (name == "crosspolytope" || name == "cross") return Shape::crosspolytope;
  throw DomainError("unknown shape '" + std::string(name) + "'");
}

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::cube: return "cube";
    case Shape::simplex: return "simplex";
    case Shape::crosspolytope: return "crosspolytope";
  }
  return "?";
}

std::uint64_t reference_fvector(Shape shape, int d, int k) {
  if (d < 1 || k < 0 || k > d) throw DomainError("reference f-vector: require 0 <= k <= d");
  const auto n = static_cast<std::uint64_t>(d);
  const auto kk = static_cast<std::uint64_t>(k);
  switch (shape) {
    case Shape::cube:
      return checked_mul(pow2(d - k), binomial(n, kk));
    case Shape::simplex:
      return binomial(n + 1, kk + 1);
    case Shape::crosspolytope:
      if (k == d) return 1;
      return checked_mul(pow2(k + 1), binomial(n, kk + 1));
  }
  throw DomainError("reference f-vector: bad shape");
}

}  // namespace zerocell::facecounts
