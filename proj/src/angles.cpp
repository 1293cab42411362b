#include "zerocell/angles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "zerocell/anumbers.hpp"
#include "zerocell/facecounts.hpp"

namespace zerocell::angles {

using numerics::kPi;

ConeKind parse_cone_kind(std::string_view name) {
  if (name == "full" || name == "full_sphere" || name == "full-sphere") return ConeKind::full_sphere;
  if (name == "half" || name == "half_sphere" || name == "half-sphere") return ConeKind::half_sphere;
  throw DomainError("unknown cone kind '" + std::string(name) + "'");
}

std::string_view cone_kind_name(ConeKind kind) {
  return kind == ConeKind::full_sphere ? "full_sphere" : "half_sphere";
}

void ConeSpec::validate() const {
  if (d < 1) throw DomainError("cone: d must be >= 1");
  if (ell < 0) throw DomainError("cone: ell must be >= 0");
}

double wendel_angle(int d, int ell) {
  ConeSpec{d, ell}.validate();
  const int n = d + ell;
  if (n <= 60) {
    std::uint64_t sum = 0;
    for (int j = d; j <= n; ++j) sum += facecounts::binomial(n, j);
    return std::ldexp(static_cast<double>(sum), -n);
  }
  std::vector<double> terms;
  for (int j = d; j <= n; ++j) terms.push_back(numerics::log_binomial(n, j));
  return std::exp(numerics::log_sum_exp(terms.data(), terms.size()) - n * std::log(2.0));
}

ScaledReal halfsphere_angle_exact_scaled(int d, int ell, const QuadratureSettings& settings) {
  ConeSpec{d, ell}.validate();
  const int n = d + ell;
  std::vector<double> log_terms;
  for (int j = 0; j <= ell; j += 2) {
    const auto b = anumbers::b_number_scaled(n + 1, d + j + 1, settings);
    const auto a = anumbers::a_number_scaled({d + j - 1, -1}, settings);
    log_terms.push_back(b.log_abs() + 2.0 * std::log(d + j) + a.log_abs());
  }
  // All terms are positive; add from the largest down.
  std::sort(log_terms.begin(), log_terms.end(), std::greater<>());
  const double peak = log_terms.front();
  double sum = 0.0;
  for (double t : log_terms) sum += std::exp(t - peak);
  const double prefactor = numerics::log_factorial(n) - std::log(2.0) - n * std::log(kPi);
  return ScaledReal{sum, peak + prefactor};
}

double halfsphere_angle_exact(int d, int ell, const QuadratureSettings& settings) {
  return halfsphere_angle_exact_scaled(d, ell, settings).value();
}

ScaledReal halfsphere_angle_reduced_scaled(int d, const QuadratureSettings& settings) {
  ConeSpec{d, 0}.validate();
  const auto a = anumbers::a_number_scaled({d - 1, -1}, settings);
  const double log_sine_moment = 0.5 * std::log(kPi) + numerics::log_gamma((d + 1) / 2.0) -
                                 numerics::log_gamma((d + 2) / 2.0);
  return a.scaled_by_log(log_sine_moment + 2.0 * std::log(d) - std::log(2.0) -
                         d * std::log(kPi));
}

double wendel_angle_asymptotic(int d, int ell) {
  ConeSpec{d, ell}.validate();
  return std::ldexp(std::exp(ell * std::log(d / 2.0) - numerics::log_factorial(ell)), -d);
}

double log_halfsphere_angle_asymptotic(int d, int ell) {
  ConeSpec{d, ell}.validate();
  return 0.5 * std::log(3.0) + ell * std::log(d / 2.0) - numerics::log_factorial(ell) -
         d * std::log(kPi);
}

double halfsphere_angle_asymptotic(int d, int ell) {
  return std::exp(log_halfsphere_angle_asymptotic(d, ell));
}

double expected_angle(const ConeSpec& spec, const QuadratureSettings& settings) {
  spec.validate();
  return spec.kind == ConeKind::full_sphere ? wendel_angle(spec.d, spec.ell)
                                            : halfsphere_angle_exact(spec.d, spec.ell, settings);
}

}  // namespace zerocell::angles
