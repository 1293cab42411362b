#pragma once

#include <string_view>

#include "zerocell/numerics.hpp"

namespace zerocell::angles {

using numerics::QuadratureSettings;
using numerics::ScaledReal;

enum class ConeKind { full_sphere, half_sphere };

ConeKind parse_cone_kind(std::string_view name);
std::string_view cone_kind_name(ConeKind kind);

/// Positive hull of d + ell random unit vectors in R^d, drawn from the full
/// sphere (D_{d+ell,d}) or the upper half-sphere x_1 >= 0 (C_{d+ell,d}).
struct ConeSpec {
  int d = 1;
  int ell = 0;
  ConeKind kind = ConeKind::full_sphere;
  void validate() const;
};

/// E alpha(D_{d+ell,d}) = 2^{-(d+ell)} sum_{j=d}^{d+ell} C(d+ell, j).
/// Exact integer arithmetic up to d + ell <= 60.
double wendel_angle(int d, int ell);

/// E alpha(C_{d+ell,d}) as a sum over even j <= ell of
/// B{d+ell+1, d+j+1} (d+j)^2 A[d+j-1,-1], times (d+ell)! / (2 pi^{d+ell}).
ScaledReal halfsphere_angle_exact_scaled(int d, int ell,
                                         const QuadratureSettings& settings = {});
double halfsphere_angle_exact(int d, int ell, const QuadratureSettings& settings = {});

/// The ell = 0 case written with Int_0^pi sin^d in closed form:
/// (1/(2 pi^d)) sqrt(pi) Gamma((d+1)/2) / Gamma((d+2)/2) d^2 A[d-1,-1].
ScaledReal halfsphere_angle_reduced_scaled(int d, const QuadratureSettings& settings = {});

/// (d/2)^ell / ell! * 2^{-d}.
double wendel_angle_asymptotic(int d, int ell);
/// sqrt(3) (d/2)^ell / ell! * pi^{-d}.
double halfsphere_angle_asymptotic(int d, int ell);
double log_halfsphere_angle_asymptotic(int d, int ell);

/// Dispatch on the cone kind.
double expected_angle(const ConeSpec& spec, const QuadratureSettings& settings = {});

}  // namespace zerocell::angles
