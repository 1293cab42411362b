#pragma once

#include <complex>

#include "zerocell/numerics.hpp"

namespace zerocell::anumbers {

using numerics::QuadratureSettings;
using numerics::ScaledReal;

/// Vertical line Re z = c on which the defining contour integrals are
/// evaluated. Both lines give the same value (the integrands are analytic in
/// the strip between them); they differ only in how much cancellation the
/// quadrature has to absorb.
enum class Contour {
  /// c chosen where the integrand's modulus is smallest on the real axis
  /// (stationary phase at y = 0, no cancellation to speak of). For A[n,k]
  /// with k < 0 the line Re z = 0 is used, where the integrand is regular.
  saddle,
  /// c = pi/2: the defining integral over the real x-axis, literally.
  half_pi,
};

struct ANumberQuery {
  long long n = 0;
  long long k = 0;
  void validate() const;
};

struct TNumberQuery {
  long long d = 1;
  long long k = 0;
  double alpha = 1.0;
  void validate() const;
};

/// A[n,k] = n!/(n-k)! * (1/pi) * Int_R (cosh x)^{-n-1} (pi/2 + i x)^{n-k} dx.
ScaledReal a_number_scaled(const ANumberQuery& q,
                           const QuadratureSettings& settings = {},
                           Contour contour = Contour::saddle);
double a_number(const ANumberQuery& q, const QuadratureSettings& settings = {},
                Contour contour = Contour::saddle);

/// T_{d,k}(alpha) = (1/pi) Int_R F(iu)^{d-k} (cosh u)^{-alpha d - 1} du with
/// F(iu) = c(alpha) + i Int_0^u (cosh t)^{alpha-1} dt.
/// For k < 0 the half_pi line is always used.
ScaledReal t_number_scaled(const TNumberQuery& q,
                           const QuadratureSettings& settings = {},
                           Contour contour = Contour::saddle);
double t_number(const TNumberQuery& q, const QuadratureSettings& settings = {},
                Contour contour = Contour::saddle);

/// B{n,k} = 1/((k-1)!(n-k)!) Int_0^pi (sin x)^{k-1} x^{n-k} dx, 1 <= k <= n.
ScaledReal b_number_scaled(long long n, long long k,
                           const QuadratureSettings& settings = {});
double b_number(long long n, long long k, const QuadratureSettings& settings = {});

/// (Int_0^{|u|} sinh^{alpha-1}) / sinh^alpha |u|, which stays strictly
/// below 1/alpha for u != 0.
double f_tilde_ratio(double u, double alpha, const QuadratureSettings& settings = {});

/// c(alpha) = sqrt(pi) Gamma(alpha/2) / (2 Gamma((alpha+1)/2)), the value of
/// Int_0^{pi/2} sin^{alpha-1}.
double f_tilde_constant(double alpha);

/// Int_0^c sin^{alpha-1} x dx by quadrature (0 < c <= pi/2).
double sine_power_integral(double c, double alpha,
                           const QuadratureSettings& settings = {});

/// Real part of the vertical line used for a query under Contour::saddle.
double a_number_abscissa(const ANumberQuery& q);
double t_number_abscissa(const TNumberQuery& q, const QuadratureSettings& settings = {});

/// Raw integrand of A[n,k] on the real axis:
/// (cosh x)^{-n-1} (pi/2 + i x)^{n-k}.
std::complex<double> a_integrand(long long n, long long k, double x);

}  // namespace zerocell::anumbers
