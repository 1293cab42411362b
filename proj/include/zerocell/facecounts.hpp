#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "zerocell/anumbers.hpp"
#include "zerocell/numerics.hpp"

namespace zerocell::facecounts {

using numerics::QuadratureSettings;
using numerics::ScaledReal;

/// Face counts f_0..f_d of a polytope (or their expectations), with the
/// polytope itself counted as f_d = 1.
struct FVector {
  int dim = 0;
  std::vector<double> counts;

  /// sum_l (-1)^l counts[l]; equals 1 for any polytope.
  double euler_sum() const;
  /// Throws NumericError unless all entries are finite and nonnegative and
  /// the Euler relation holds to rel_tol.
  void check(double rel_tol) const;
};

/// E f_l(Z_d) = pi^{d-l} / (d-l)! * A[d, d-l] for 0 <= l <= d-1.
ScaledReal zero_cell_expected_faces_scaled(int d, int ell,
                                           const QuadratureSettings& settings = {});
double zero_cell_expected_faces(int d, int ell, const QuadratureSettings& settings = {});
FVector zero_cell_fvector(int d, const QuadratureSettings& settings = {});

/// Expected number of (k-1)-faces of the Poisson polyhedron conv Pi_{d,alpha}:
/// alpha^d C(d,k) (sqrt(pi) Gamma(alpha/2) / Gamma((alpha+1)/2))^k T_{d,k}(alpha).
ScaledReal poisson_polyhedron_expected_faces_scaled(
    int d, int k, double alpha, const QuadratureSettings& settings = {},
    anumbers::Contour contour = anumbers::Contour::saddle);
double poisson_polyhedron_expected_faces(int d, int k, double alpha,
                                         const QuadratureSettings& settings = {},
                                         anumbers::Contour contour = anumbers::Contour::saddle);
FVector poisson_polyhedron_fvector(int d, double alpha,
                                   const QuadratureSettings& settings = {});

/// E f_k of the typical cell, which matches the cube: 2^{d-k} C(d,k).
double typical_cell_expected_faces(int d, int k);
/// Same value as an exact integer; throws DomainError if it exceeds 64 bits.
std::uint64_t typical_cell_expected_faces_exact(int d, int k);

/// E f_0^2 of the typical cell, 2^d d! sum_j kappa_j^2 / (4^j (d-j)!).
double typical_cell_vertex_second_moment(int d);
double log_typical_cell_vertex_second_moment(int d);

enum class Shape { cube, simplex, crosspolytope };
Shape parse_shape(std::string_view name);
std::string_view shape_name(Shape shape);

/// f_k of the d-dimensional cube, simplex or crosspolytope, 0 <= k <= d.
std::uint64_t reference_fvector(Shape shape, int d, int k);

/// Exact binomial coefficient; throws DomainError on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace zerocell::facecounts
