#include "zerocell/anumbers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace zerocell::anumbers {

using numerics::kNegInf;
using numerics::kPi;
using numerics::ScaledComplex;
using cplx = std::complex<double>;

namespace {

constexpr double kHalfPi = kPi / 2.0;

// 15-point Kronrod rule, used as a fixed high-order rule for short panels.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

template <class F>
cplx fixed_rule(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx sum = kWeights[7] * f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    sum += kWeights[j] * (f(center - dx) + f(center + dx));
  }
  return sum * half;
}

void require_converged(const numerics::QuadratureResult& r, const char* what) {
  if (r.converged) return;
  std::ostringstream msg;
  msg << what << ": quadrature did not reach tolerance (relative error estimate "
      << r.relative_error() << " after " << r.subdivisions << " panels)";
  throw NumericError(msg.str());
}

// log of (n! / (n-k)!) for k <= n.
double log_falling_ratio(long long n, long long k) {
  return numerics::log_factorial(n) - numerics::log_factorial(n - k);
}

// log(y / sinh y) for y >= 0.
double log_y_over_sinh(double y) {
  if (y < 1e-4) return -y * y / 6.0;
  if (y < 20.0) return std::log(y / std::sinh(y));
  return std::log(2.0 * y) - y - std::log1p(-std::exp(-2.0 * y));
}

// G(c + iy) = Int_0^{c+iy} sin^{alpha-1}(z) dz along the vertical line
// Re z = c, tabulated on a uniform grid in y and completed by a fixed
// high-order rule on the last partial panel. The table grows on demand; the
// values at grid nodes are independent of query order.
class VerticalPrimitive {
 public:
  VerticalPrimitive(double c, double alpha, double base)
      : c_(c), alpha_(alpha), step_(std::min(0.125, c / 8.0)) {
    table_.push_back(cplx(base, 0.0));
  }

  cplx operator()(double y) {
    if (y < 0) return std::conj((*this)(-y));
    const auto j = static_cast<std::size_t>(std::floor(y / step_));
    while (table_.size() <= j) {
      const double a = step_ * static_cast<double>(table_.size() - 1);
      table_.push_back(table_.back() + panel(a, a + step_));
    }
    const double yj = step_ * static_cast<double>(j);
    if (y == yj) return table_[j];
    return table_[j] + panel(yj, y);
  }

 private:
  // Int_a^b i * sin^{alpha-1}(c + i t) dt.
  cplx panel(double a, double b) const {
    if (alpha_ == 1.0) return cplx(0.0, b - a);
    const auto integrand = [this](double t) {
      return cplx(0.0, 1.0) *
             std::exp((alpha_ - 1.0) * numerics::log_sin(cplx(c_, t)));
    };
    return fixed_rule(integrand, a, b);
  }

  double c_;
  double alpha_;
  double step_;
  std::vector<cplx> table_;
};

}  // namespace

void ANumberQuery::validate() const {
  if (n < 0) throw DomainError("A[n,k]: n must be nonnegative");
  if (k > n) throw DomainError("A[n,k]: k must not exceed n");
}

void TNumberQuery::validate() const {
  if (d < 1) throw DomainError("T_{d,k}: d must be positive");
  if (k > d) throw DomainError("T_{d,k}: k must not exceed d");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("T_{d,k}: alpha must be positive");
}

double f_tilde_constant(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("f_tilde_constant: alpha must be positive");
  return std::exp(0.5 * std::log(kPi) + numerics::log_gamma(alpha / 2.0) -
                  numerics::log_gamma((alpha + 1.0) / 2.0)) /
         2.0;
}

double sine_power_integral(double c, double alpha, const QuadratureSettings& settings) {
  if (!(alpha > 0.0)) throw DomainError("sine_power_integral: alpha must be positive");
  if (!(c > 0.0 && c <= kHalfPi))
    throw DomainError("sine_power_integral: c must lie in (0, pi/2]");
  if (alpha == 1.0) return c;
  // t = x^alpha removes the endpoint singularity:
  // Int_0^c sin^{alpha-1} x dx = (1/alpha) Int_0^{c^alpha} sinc(t^{1/alpha})^{alpha-1} dt
  const auto integrand = [alpha](double t) {
    const double x = std::pow(t, 1.0 / alpha);
    const double sinc = x < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return std::pow(sinc, alpha - 1.0);
  };
  const auto r = numerics::integrate_interval(integrand, 0.0, std::pow(c, alpha), settings);
  require_converged(r, "sine_power_integral");
  return r.value() / alpha;
}

double a_number_abscissa(const ANumberQuery& q) {
  q.validate();
  if (q.k < 0) return 0.0;
  if (q.k == q.n) return kHalfPi;
  // Stationary point of (n-k) log c - (n+1) log sin c: c cot c = (n-k)/(n+1).
  const double target =
      static_cast<double>(q.n - q.k) / static_cast<double>(q.n + 1);
  return numerics::bisect_root(
      [target](double y) { return y / std::tan(y) - target; }, 1e-12,
      kHalfPi - 1e-12, 1e-12);
}

std::complex<double> a_integrand(long long n, long long k, double x) {
  ANumberQuery{n, k}.validate();
  const cplx w = static_cast<double>(n - k) * std::log(cplx(kHalfPi, x)) -
                 static_cast<double>(n + 1) * numerics::log_sin(cplx(kHalfPi, x));
  return std::exp(w);
}

ScaledReal a_number_scaled(const ANumberQuery& q, const QuadratureSettings& settings,
                           Contour contour) {
  q.validate();
  const double n = static_cast<double>(q.n);
  const double m = static_cast<double>(q.n - q.k);
  numerics::QuadratureResult r;

  if (contour == Contour::saddle && q.k < 0) {
    // On Re z = 0 the integrand (iy)^{n-k} / (i sinh y)^{n+1} is regular:
    // i^{-k-1} (y / sinh y)^{n+1} y^{-k-1}.
    const long long quarter_turns = -q.k - 1;
    // Odd power of i: the integrand is purely imaginary, so A[n,k] = 0.
    if (quarter_turns % 2 == 1) return ScaledReal{0.0, 0.0};
    const double power = static_cast<double>(quarter_turns);
    const double phase = (quarter_turns / 2) % 2 == 0 ? 0.0 : kPi;
    const auto f = [n, power, phase](double y) {
      double log_mag = (n + 1.0) * log_y_over_sinh(y);
      if (power > 0) log_mag += y == 0.0 ? kNegInf : power * std::log(y);
      return ScaledComplex(log_mag, phase);
    };
    r = numerics::integrate_halfline(f, settings);
  } else {
    const double c = contour == Contour::saddle ? a_number_abscissa(q) : kHalfPi;
    const auto f = [n, m, c](double y) {
      const cplx z(c, y);
      const cplx w = m * std::log(z) - (n + 1.0) * numerics::log_sin(z);
      return ScaledComplex::from_log(w);
    };
    r = numerics::integrate_halfline(f, settings);
  }
  require_converged(r, "a_number");
  return r.scaled().scaled_by_log(log_falling_ratio(q.n, q.k) + std::log(2.0 / kPi));
}

double a_number(const ANumberQuery& q, const QuadratureSettings& settings,
                Contour contour) {
  return a_number_scaled(q, settings, contour).value();
}

double t_number_abscissa(const TNumberQuery& q, const QuadratureSettings& settings) {
  q.validate();
  if (q.k <= 0 || q.k == q.d) return kHalfPi;
  const double m = static_cast<double>(q.d - q.k);
  const double s = q.alpha * static_cast<double>(q.d) + 1.0;
  const double alpha = q.alpha;
  QuadratureSettings inner = settings;
  inner.rel_tol = std::max(settings.rel_tol, 1e-8);
  const auto neg_log_modulus = [&](double c) {
    return -(m * std::log(sine_power_integral(c, alpha, inner)) - s * std::log(std::sin(c)));
  };
  return numerics::maximize_unimodal(neg_log_modulus, 1e-4, kHalfPi, 1e-6).argmax;
}

ScaledReal t_number_scaled(const TNumberQuery& q, const QuadratureSettings& settings,
                           Contour contour) {
  q.validate();
  if (q.k < 0) contour = Contour::half_pi;
  const double c = contour == Contour::saddle ? t_number_abscissa(q, settings) : kHalfPi;
  const double base =
      c == kHalfPi ? f_tilde_constant(q.alpha) : sine_power_integral(c, q.alpha, settings);
  VerticalPrimitive primitive(c, q.alpha, base);
  const double m = static_cast<double>(q.d - q.k);
  const double s = q.alpha * static_cast<double>(q.d) + 1.0;

  const auto f = [&primitive, m, s, c](double y) {
    const cplx z(c, y);
    cplx w = -s * numerics::log_sin(z);
    if (m != 0.0) w += m * std::log(primitive(y));
    return ScaledComplex::from_log(w);
  };
  const auto r = numerics::integrate_halfline(f, settings);
  require_converged(r, "t_number");
  return r.scaled().scaled_by_log(std::log(2.0 / kPi));
}

double t_number(const TNumberQuery& q, const QuadratureSettings& settings,
                Contour contour) {
  return t_number_scaled(q, settings, contour).value();
}

ScaledReal b_number_scaled(long long n, long long k, const QuadratureSettings& settings) {
  if (n < 1 || k < 1 || k > n) throw DomainError("B{n,k}: require 1 <= k <= n");
  const double sin_power = static_cast<double>(k - 1);
  const double x_power = static_cast<double>(n - k);
  const auto log_f = [sin_power, x_power](double x) {
    double v = 0.0;
    if (sin_power > 0) {
      const double s = std::sin(x);
      v += s > 0 ? sin_power * std::log(s) : kNegInf;
    }
    if (x_power > 0) v += x > 0 ? x_power * std::log(x) : kNegInf;
    return v;
  };
  const auto r = numerics::integrate_interval_log(log_f, 0.0, kPi, settings);
  require_converged(r, "b_number");
  return r.scaled().scaled_by_log(-numerics::log_factorial(k - 1) -
                                  numerics::log_factorial(n - k));
}

double b_number(long long n, long long k, const QuadratureSettings& settings) {
  return b_number_scaled(n, k, settings).value();
}

double f_tilde_ratio(double u, double alpha, const QuadratureSettings& settings) {
  if (!(alpha > 0.0)) throw DomainError("f_tilde_ratio: alpha must be positive");
  if (u == 0.0 || !std::isfinite(u))
    throw DomainError("f_tilde_ratio: u must be finite and nonzero");
  const double y = std::abs(u);
  const double log_sinh_y = y < 20.0 ? std::log(std::sinh(y))
                                     : y - std::log(2.0) + std::log1p(-std::exp(-2.0 * y));
  // Int_0^y (sinh t / sinh y)^{alpha-1} dt, so the pieces stay O(y).
  double integral = 0.0;
  if (alpha >= 1.0) {
    const auto integrand = [alpha, log_sinh_y](double t) {
      if (t == 0.0) return alpha == 1.0 ? 1.0 : 0.0;
      const double log_sinh_t =
          t < 20.0 ? std::log(std::sinh(t))
                   : t - std::log(2.0) + std::log1p(-std::exp(-2.0 * t));
      return std::exp((alpha - 1.0) * (log_sinh_t - log_sinh_y));
    };
    const auto r = numerics::integrate_interval(integrand, 0.0, y, settings);
    require_converged(r, "f_tilde_ratio");
    integral = r.value();
  } else {
    // Singular at t = 0; substitute t = s^{1/alpha} on [0, min(y, 1)].
    const double split = std::min(y, 1.0);
    const auto near = [alpha, log_sinh_y](double s) {
      const double t = std::pow(s, 1.0 / alpha);
      const double shc = t < 1e-8 ? 1.0 + t * t / 6.0 : std::sinh(t) / t;
      return std::exp((alpha - 1.0) * (std::log(shc) - log_sinh_y)) / alpha;
    };
    const auto r1 = numerics::integrate_interval(near, 0.0, std::pow(split, alpha), settings);
    require_converged(r1, "f_tilde_ratio");
    integral = r1.value();
    if (y > split) {
      const auto far = [alpha, log_sinh_y](double t) {
        const double log_sinh_t =
            t < 20.0 ? std::log(std::sinh(t))
                     : t - std::log(2.0) + std::log1p(-std::exp(-2.0 * t));
        return std::exp((alpha - 1.0) * (log_sinh_t - log_sinh_y));
      };
      const auto r2 = numerics::integrate_interval(far, split, y, settings);
      require_converged(r2, "f_tilde_ratio");
      integral += r2.value();
    }
  }
  return integral * std::exp(-log_sinh_y);
}

}  // namespace zerocell::anumbers
