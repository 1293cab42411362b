#include "zerocell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zerocell::numerics {

double wrap_phase(double phase) {
  if (phase > -kPi && phase <= kPi) return phase;
  double wrapped = std::remainder(phase, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

ScaledComplex::ScaledComplex(double log_mag, double phase)
    : log_mag_(log_mag), phase_(log_mag == kNegInf ? 0.0 : wrap_phase(phase)) {}

ScaledComplex ScaledComplex::from_complex(std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

ScaledComplex ScaledComplex::from_log(std::complex<double> w) {
  return {w.real(), w.imag()};
}

std::complex<double> ScaledComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_), phase_);
}

double ScaledComplex::real_scaled(double shift) const {
  if (is_zero()) return 0.0;
  return std::exp(log_mag_ - shift) * std::cos(phase_);
}

ScaledComplex ScaledComplex::operator*(const ScaledComplex& other) const {
  if (is_zero() || other.is_zero()) return zero();
  return {log_mag_ + other.log_mag_, phase_ + other.phase_};
}

ScaledComplex ScaledComplex::operator/(const ScaledComplex& other) const {
  if (other.is_zero()) throw NumericError("ScaledComplex division by zero");
  if (is_zero()) return zero();
  return {log_mag_ - other.log_mag_, phase_ - other.phase_};
}

ScaledComplex ScaledComplex::pow(double exponent) const {
  if (is_zero()) {
    if (exponent > 0) return zero();
    if (exponent == 0) return {0.0, 0.0};
    throw NumericError("ScaledComplex: negative power of zero");
  }
  return {exponent * log_mag_, exponent * phase_};
}

double ScaledReal::value() const {
  if (mantissa == 0.0) return 0.0;
  return mantissa * std::exp(log_scale);
}

double ScaledReal::log_abs() const {
  if (mantissa == 0.0) return kNegInf;
  return std::log(std::abs(mantissa)) + log_scale;
}

ScaledReal ScaledReal::from_log(double log_abs, int sign) {
  if (sign == 0 || log_abs == kNegInf) return {0.0, 0.0};
  return {sign > 0 ? 1.0 : -1.0, log_abs};
}

ScaledReal ScaledReal::operator*(const ScaledReal& other) const {
  return {mantissa * other.mantissa, log_scale + other.log_scale};
}

ScaledReal ScaledReal::scaled_by_log(double log_factor) const {
  return {mantissa, log_scale + log_factor};
}

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSettings: rel_tol must be > 0");
  if (max_subdivisions < 1)
    throw DomainError("QuadratureSettings: max_subdivisions must be >= 1");
  if (!(tail_log_drop > 0.0))
    throw DomainError("QuadratureSettings: tail_log_drop must be > 0");
}

double QuadratureResult::relative_error() const {
  if (mantissa == 0.0) return error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return error / std::abs(mantissa);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "log_gamma: argument must be positive, got " << x;
    throw DomainError(msg.str());
  }
  return std::lgamma(x);
}

double log_factorial(long long n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < 2) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_sum_exp(const double* values, std::size_t count) {
  double peak = kNegInf;
  for (std::size_t i = 0; i < count; ++i) peak = std::max(peak, values[i]);
  if (peak == kNegInf) return kNegInf;
  if (std::isinf(peak)) return peak;
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += std::exp(values[i] - peak);
  return peak + std::log(sum);
}

std::complex<double> log_sin(std::complex<double> z) {
  const double x = z.real();
  const double y = std::abs(z.imag());
  std::complex<double> result;
  if (y < 1.0) {
    result = std::log(std::sin(std::complex<double>(x, y)));
  } else {
    // sin(x + iy) = (e^y / 2) * (sin x (1 + e^{-2y}) + i cos x (1 - e^{-2y}))
    const double e = std::exp(-2.0 * y);
    const std::complex<double> rest(std::sin(x) * (1.0 + e), std::cos(x) * (1.0 - e));
    result = std::complex<double>(y - std::log(2.0), 0.0) + std::log(rest);
  }
  return z.imag() < 0 ? std::conj(result) : result;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol) {
  if (!(lo < hi)) throw DomainError("bisect_root: require lo < hi");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0) == (fhi > 0)) {
    std::ostringstream msg;
    msg << "bisect_root: endpoints do not bracket a root (f(" << lo << ")=" << flo
        << ", f(" << hi << ")=" << fhi << ")";
    throw NumericError(msg.str());
  }
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

Maximum maximize_unimodal(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
  if (!(lo < hi)) throw DomainError("maximize_unimodal: require lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (!(c > a && d < b && c < d)) break;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace zerocell::numerics
