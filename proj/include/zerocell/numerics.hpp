#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace zerocell {

/// Raised for domain violations (arguments outside an operation's contract).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical procedure cannot produce a trustworthy value
/// (non-finite integrand, quadrature that missed its tolerance, bad bracket).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace numerics {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// A complex number stored as (log|z|, arg z) so that d-th powers of
/// moderately sized values neither overflow nor underflow.
/// log_mag == -inf encodes zero.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(double log_mag, double phase);

  static ScaledComplex zero() { return {kNegInf, 0.0}; }
  static ScaledComplex from_complex(std::complex<double> z);
  /// exp(w) for a complex exponent w, i.e. log_mag = Re w, phase = Im w.
  static ScaledComplex from_log(std::complex<double> w);

  double log_mag() const { return log_mag_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_mag_ == kNegInf; }

  std::complex<double> to_complex() const;
  /// Re(z) * exp(-shift); used to bring values to a common scale.
  double real_scaled(double shift) const;

  ScaledComplex operator*(const ScaledComplex& other) const;
  ScaledComplex operator/(const ScaledComplex& other) const;
  ScaledComplex pow(double exponent) const;

 private:
  double log_mag_ = kNegInf;
  double phase_ = 0.0;
};

/// A real number held as mantissa * exp(log_scale).
struct ScaledReal {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const;
  /// log|x|; -inf for zero.
  double log_abs() const;
  int sign() const { return mantissa > 0 ? 1 : (mantissa < 0 ? -1 : 0); }

  static ScaledReal from_log(double log_abs, int sign = 1);
  ScaledReal operator*(const ScaledReal& other) const;
  ScaledReal scaled_by_log(double log_factor) const;
};

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 4000;
  /// Truncate [0, inf) once the integrand's log-magnitude is this far below
  /// the running peak.
  double tail_log_drop = 40.0 * 2.302585092994046;

  /// Throws DomainError unless rel_tol > 0 and max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  /// Integral = mantissa * exp(log_scale).
  double mantissa = 0.0;
  double log_scale = 0.0;
  /// Error estimate in mantissa units.
  double error = 0.0;
  /// Integral of |f| in mantissa units (cancellation diagnostic).
  double l1_norm = 0.0;
  bool converged = false;
  int subdivisions = 0;
  int evaluations = 0;
  /// Right end of the truncated interval (half-line integrals only).
  double cutoff = 0.0;

  double value() const { return scaled().value(); }
  ScaledReal scaled() const { return {mantissa, log_scale}; }
  double relative_error() const;
};

using ScaledIntegrand = std::function<ScaledComplex(double)>;
using RealIntegrand = std::function<double(double)>;
using LogIntegrand = std::function<double(double)>;

/// Integral over [0, inf) of Re f, where f has one log-magnitude peak and
/// decays at least exponentially beyond it. The interval is truncated at the
/// first power-of-two multiple where the log-magnitude has dropped by
/// settings.tail_log_drop, then refined by adaptive Gauss-Kronrod (7/15).
/// Throws NumericError on a non-finite integrand value.
QuadratureResult integrate_halfline(const ScaledIntegrand& f,
                                    const QuadratureSettings& settings = {});

/// Adaptive Gauss-Kronrod on a finite interval for a plain real integrand.
QuadratureResult integrate_interval(const RealIntegrand& f, double a, double b,
                                    const QuadratureSettings& settings = {});

/// Integral of exp(log_f) over [a, b] for a log-concave-ish positive
/// integrand; the integrand is shifted by its maximum before summation.
QuadratureResult integrate_interval_log(const LogIntegrand& log_f, double a,
                                        double b,
                                        const QuadratureSettings& settings = {});

/// Natural log of Gamma(x) for x > 0.
double log_gamma(double x);

/// log(n!) for n >= 0.
double log_factorial(long long n);

/// log of the binomial coefficient C(n, k); -inf outside 0 <= k <= n.
double log_binomial(long long n, long long k);

/// log(sum exp(x_i)) accumulated stably.
double log_sum_exp(const double* values, std::size_t count);

/// Principal log of sin(z) for 0 < Re z < pi (and its closure at Re z = 0),
/// stable for large |Im z|.
std::complex<double> log_sin(std::complex<double> z);

/// Root of a monotone function by bisection; the returned point lies in a
/// bracket of width <= tol. Throws NumericError when f(lo), f(hi) share sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol);

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal function.
/// Throws DomainError if lo >= hi.
Maximum maximize_unimodal(const std::function<double(double)>& f, double lo,
                          double hi, double tol);

}  // namespace numerics
}  // namespace zerocell
