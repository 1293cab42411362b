#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "zerocell/anumbers.hpp"

using namespace zerocell;
using namespace zerocell::anumbers;
using numerics::kPi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("A[n,k] spot values") {
  CHECK(rel(a_number({1, 1}), 2.0 / kPi) < 1e-10);
  CHECK(rel(a_number({2, 2}), 1.0) < 1e-10);
  CHECK(rel(a_number({1, 0}), 1.0) < 1e-10);
  CHECK(rel(a_number({1, -1}), kPi / 6) < 1e-10);
  CHECK(std::abs(a_number({10, -2})) < 1e-10 * a_number({10, 0}));
  CHECK_THROWS_AS(a_number({3, 4}), DomainError);
}

TEST_CASE("A[n,k] against the sech-moment expansion") {
  for (long long n = 0; n <= 10; ++n)
    for (long long k = -3; k <= n; ++k) {
      if (k < 0 && k % 2 == 0) continue;
      const double want = static_cast<double>(oracle::a_number(n, k));
      INFO("n=" << n << " k=" << k);
      CHECK(rel(a_number({n, k}), want) < 1e-9);
    }
}

TEST_CASE("A[n,k]: saddle and literal contours agree") {
  // The literal line cancels roughly (pi/2)^n, so it runs at a looser target.
  numerics::QuadratureSettings literal;
  literal.rel_tol = 1e-9;
  for (long long n : {3, 8, 15, 20})
    for (long long k : {-1LL, 0LL, 1LL, n / 2, n}) {
      INFO("n=" << n << " k=" << k);
      CHECK(rel(a_number({n, k}), a_number({n, k}, literal, Contour::half_pi)) < 1e-8);
    }
}

TEST_CASE("conjugate symmetry of the full-line integrand") {
  for (auto [n, k] : {std::pair{5LL, 2LL}, std::pair{9LL, -1LL}, std::pair{12LL, 6LL}}) {
    // Coarse trapezoid over [-30, 30] without using symmetry.
    std::complex<double> sum = 0.0;
    const double h = 0.01;
    for (int i = -3000; i <= 3000; ++i) sum += a_integrand(n, k, i * h) * h;
    INFO("n=" << n << " k=" << k);
    CHECK(std::abs(sum.imag()) <= 1e-10 * std::abs(sum.real()));
  }
}

TEST_CASE("vanishing family for even negative k") {
  for (long long n = 5; n <= 15; ++n)
    for (long long k : {-2, -4}) {
      const double a = a_number({n, k});
      CHECK(std::abs(a) <= 1e-10 * std::max(1.0, a_number({n, 0})));
    }
}

TEST_CASE("A/T bridge for 0 <= k <= d <= 20") {
  for (long long d = 1; d <= 20; ++d)
    for (long long k = 0; k <= d; ++k) {
      const double lhs = a_number({d, k});
      const double rhs = oracle::falling_ratio(d, k) * t_number({d, k, 1.0});
      INFO("d=" << d << " k=" << k);
      CHECK(rel(lhs, rhs) < 1e-8);
    }
}

TEST_CASE("T(d,k,2) closed form and both contours") {
  for (long long d = 1; d <= 12; ++d)
    for (long long k = 0; k <= d; ++k) {
      const double want = static_cast<double>(oracle::choose(d + k, k)) * std::ldexp(1.0, -(d + k));
      INFO("d=" << d << " k=" << k);
      CHECK(rel(t_number({d, k, 2.0}), want) < 1e-8);
      CHECK(rel(t_number({d, k, 2.0}, {}, Contour::half_pi), want) < 1e-8);
    }
  CHECK(rel(t_number({1, 1, 2.0}), 0.5) < 1e-10);
  CHECK(rel(t_number({7, 3, 1.0}), 24.0 / 5040.0 * a_number({7, 3})) < 1e-10);
}

TEST_CASE("T against nested Simpson for non-integer alpha") {
  for (double alpha : {0.5, 1.5, 3.7})
    for (auto [d, k] : {std::pair{2LL, 1LL}, std::pair{4LL, 2LL}, std::pair{6LL, 0LL},
                        std::pair{5LL, 5LL}}) {
      const double want = static_cast<double>(oracle::t_number(d, k, alpha));
      INFO("alpha=" << alpha << " d=" << d << " k=" << k);
      CHECK(rel(t_number({d, k, alpha}), want) < 1e-8);
    }
}

TEST_CASE("T domain errors") {
  CHECK_THROWS_AS(t_number({3, 1, 0.0}), DomainError);
  CHECK_THROWS_AS(t_number({3, 1, -1.0}), DomainError);
  CHECK_THROWS_AS(t_number({3, 4, 1.0}), DomainError);
}

TEST_CASE("B{n,k}") {
  CHECK(rel(b_number(1, 1), kPi) < 1e-10);
  CHECK(rel(b_number(2, 1), kPi * kPi / 2) < 1e-10);
  CHECK(rel(b_number(2, 2), 2.0) < 1e-10);
  for (long long n = 1; n <= 12; ++n)
    for (long long k = 1; k <= n; ++k) {
      INFO("n=" << n << " k=" << k);
      CHECK(rel(b_number(n, k), static_cast<double>(oracle::b_number(n, k))) < 1e-9);
    }
  CHECK_THROWS_AS(b_number(3, 0), DomainError);
  CHECK_THROWS_AS(b_number(3, 4), DomainError);
  // Large n stays finite through the log scale.
  CHECK(std::isfinite(b_number_scaled(2000, 700).log_abs()));
}

TEST_CASE("f_tilde_ratio examples and bound") {
  CHECK(rel(f_tilde_ratio(1.0, 1.0), 1.0 / std::sinh(1.0)) < 1e-10);
  const double s2 = std::sinh(2.0);
  CHECK(rel(f_tilde_ratio(2.0, 2.0), (std::cosh(2.0) - 1.0) / (s2 * s2)) < 1e-10);
  for (double u : {0.1, 1.0, 5.0, 20.0})
    for (double alpha : {0.5, 1.0, 2.0, 3.7}) {
      INFO("u=" << u << " alpha=" << alpha);
      CHECK(f_tilde_ratio(u, alpha) < 1.0 / alpha);
      CHECK(f_tilde_ratio(-u, alpha) == f_tilde_ratio(u, alpha));
    }
  CHECK_THROWS_AS(f_tilde_ratio(0.0, 1.0), DomainError);
}

TEST_CASE("f_tilde_constant") {
  CHECK(rel(f_tilde_constant(1.0), kPi / 2) < 1e-14);
  CHECK(rel(f_tilde_constant(2.0), 1.0) < 1e-14);
  CHECK(rel(sine_power_integral(kPi / 2, 3.7), f_tilde_constant(3.7)) < 1e-10);
}

TEST_CASE("large d stays finite") {
  const auto a = a_number_scaled({500, 3});
  CHECK(std::isfinite(a.log_abs()));
  CHECK(a.sign() == 1);
  const auto t = t_number_scaled({400, 2, 1.5});
  CHECK(std::isfinite(t.log_abs()));
}
