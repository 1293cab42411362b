#include <doctest.h>

#include <cmath>

#include "zerocell/anumbers.hpp"
#include "zerocell/asymptotics.hpp"

using namespace zerocell;
using namespace zerocell::asymptotics;
using numerics::kPi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("limit constants") {
  CHECK(a_number_limit_constant(0) == doctest::Approx(1.0));
  CHECK(a_number_limit_constant(-2) == 0.0);
  CHECK(a_number_limit_constant(-4) == 0.0);
  CHECK(rel(a_number_limit_constant(1), std::sqrt(2.0 / (3.0 * kPi))) < 1e-14);
  CHECK(rel(a_number_limit_constant(1), 0.46066) < 1e-5);
}

TEST_CASE("face count asymptotics") {
  CHECK(rel(zero_cell_facecount_asymptotic(100, 1), std::sqrt(2.0 * kPi / 3.0) * 1000.0) < 1e-13);
  CHECK(rel(zero_cell_facecount_asymptotic(100, 1), 1447.2) < 1e-4);
  CHECK_THROWS_AS(zero_cell_facecount_asymptotic(10, 0), DomainError);
  CHECK(rel(poisson_polyhedron_facecount_asymptotic(50, 1, 2.0), 2500.0) < 1e-13);
  for (int k = 1; k <= 5; ++k)
    CHECK(rel(poisson_polyhedron_facecount_asymptotic(30, k, 2.0),
              std::pow(30.0, 2 * k) / std::pow(std::tgamma(k + 1.0), 2)) < 1e-12);
}

TEST_CASE("alpha = 1 polyhedron asymptotics reduce to the zero cell") {
  for (int d = 1; d <= 1000; d += 37)
    for (int k = 1; k <= 10; ++k)
      CHECK(rel(poisson_polyhedron_facecount_asymptotic(d, k, 1.0),
                zero_cell_facecount_asymptotic(d, k)) < 1e-12);
}

TEST_CASE("psi back-substitution and monotonicity on a 10^4 grid") {
  double prev = 0.0;
  double worst = 0.0;
  for (int i = 1; i <= 10000; ++i) {
    const double lam = i / 10001.0;
    const double p = psi(lam);
    worst = std::max(worst, std::abs((1.0 - lam) - p / std::tan(p)));
    CHECK(p > prev);
    CHECK(p < kPi / 2);
    prev = p;
  }
  CHECK(worst < 1e-12);
  CHECK(rel(psi(1.0 - kPi / 4), kPi / 4) < 1e-12);
  CHECK(psi(1.0 - 1e-9) == doctest::Approx(kPi / 2).epsilon(1e-6));
  CHECK_THROWS_AS(psi(0.0), DomainError);
  CHECK_THROWS_AS(psi(1.0), DomainError);
}

TEST_CASE("exponential profile endpoints and maximizer") {
  CHECK(std::abs(exponential_profile(1e-6)) < 1e-4);
  CHECK(std::abs(exponential_profile(1.0 - 1e-6) - std::log(kPi)) < 1e-4);
  const auto m = profile_maximizer();
  CHECK(std::abs(m.argmax - 0.699155) < 1e-5);
  CHECK(m.value == doctest::Approx(exponential_profile(m.argmax)));
  const auto loose = profile_maximizer(1e-6);
  const auto tight = profile_maximizer(1e-9);
  CHECK(std::abs(loose.argmax - tight.argmax) < 1e-6);
  const auto p = profile_point(0.3);
  CHECK(p.lambda == 0.3);
  CHECK(p.psi == psi(0.3));
}

TEST_CASE("exponential profile matches finite-d face counts") {
  // (1/d) log E f_{d-k}(Z_d) along k = lambda d approaches the profile; the
  // gap shrinks as d doubles.
  auto gap = [](int d) {
    const int k = static_cast<int>(0.5 * d);
    const auto a = anumbers::a_number_scaled({d, k});
    const double log_f = k * std::log(kPi) - numerics::log_factorial(k) + a.log_abs();
    return std::abs(log_f / d - exponential_profile(0.5));
  };
  CHECK(gap(400) < gap(200));
  CHECK(gap(200) < gap(100));
}

TEST_CASE("profile grid") {
  const auto g = profile_grid(1000);
  CHECK(g.size() == 1000);
  CHECK(g.front().lambda == doctest::Approx(1.0 / 1001));
  CHECK(g.back().lambda == doctest::Approx(1000.0 / 1001));
  CHECK_THROWS_AS(profile_grid(0), DomainError);
}

TEST_CASE("second moment profile") {
  const auto m = second_moment_profile_max();
  CHECK(rel(m.argmax, kPi / (kPi + 2)) < 1e-7);
  CHECK(rel(m.value, std::log(kPi + 2)) < 1e-12);
  CHECK(second_moment_profile(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(second_moment_profile(1.0) == doctest::Approx(std::log(kPi)));
  CHECK(second_moment_profile(1e-9) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("ball volumes and p_k") {
  CHECK(ball_volume(0) == doctest::Approx(1.0));
  CHECK(ball_volume(1) == doctest::Approx(2.0));
  CHECK(ball_volume(2) == doctest::Approx(kPi));
  CHECK(p_k(2) == doctest::Approx(kPi / 4));
  for (int k = 0; k <= 30; ++k) CHECK(rel(p_k(k), ball_volume(k) / std::pow(2.0, k)) < 1e-13);
  for (int k = 2; k <= 30; ++k) CHECK(p_k(k) < 1.0);
}

TEST_CASE("cube and simplex profiles") {
  const auto half = cube_simplex_profiles(0.5);
  CHECK(half.simplex == doctest::Approx(std::log(2.0)));
  CHECK(half.cube == doctest::Approx(1.5 * std::log(2.0)));
  CHECK(std::abs(cube_simplex_profiles(1.0 - 1e-9).cube) < 1e-7);
}

TEST_CASE("fixed coface") {
  for (int ell = 0; ell <= 5; ++ell) {
    const double d = 40.0;
    const double ratio = fixed_coface_asymptotic(d, ell, 1.3) / fixed_coface_asymptotic(d, 0, 1.3);
    CHECK(rel(ratio, fixed_coface_ratio(d, ell)) < 1e-12);
    CHECK(rel(fixed_coface_ratio(d, ell), std::pow(d / 2, ell) / std::tgamma(ell + 1.0)) < 1e-12);
  }
  // The crosspolytope ratio C(d,ell)/2^ell approaches (d/2)^ell/ell!.
  auto gap = [](int d) { return std::abs(crosspolytope_coface_ratio(d, 3) / fixed_coface_ratio(d, 3) - 1); };
  CHECK(gap(2000) < gap(200));
  // (sqrt(alpha)/2^{-1/2}) (Gamma(1/2)/Gamma(1))^10 (sqrt(pi))^9 d^{-1/2} at alpha = 1.
  const double direct = std::sqrt(2.0) * std::pow(std::sqrt(kPi), 10) * std::pow(std::sqrt(kPi), 9) /
                        std::sqrt(10.0);
  CHECK(rel(fixed_coface_asymptotic(10, 0, 1.0), direct) < 1e-12);
}

TEST_CASE("convergence tables trend to one") {
  auto check_trend = [](Quantity q, QuantityParams p, std::vector<int> ds) {
    const auto rows = convergence_table(q, p, ds);
    REQUIRE(rows.size() == ds.size());
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      INFO("quantity=" << quantity_name(q) << " d=" << rows[i + 1].d);
      CHECK(std::abs(rows[i + 1].ratio - 1) < std::abs(rows[i].ratio - 1));
    }
    for (const auto& r : rows) CHECK(rel(r.ratio, r.exact / r.asymptotic) < 1e-10);
  };
  check_trend(Quantity::a_number, {1, 0, 1.0}, {50, 100, 200, 400});
  check_trend(Quantity::zero_cell, {1, 0, 1.0}, {50, 100, 200, 400});
  check_trend(Quantity::poisson_poly, {1, 0, 2.0}, {25, 50, 100, 200});
  check_trend(Quantity::halfsphere_angle, {1, 0, 1.0}, {25, 50, 100, 200});
  check_trend(Quantity::wendel_angle, {1, 2, 1.0}, {25, 50, 100, 200});
  check_trend(Quantity::fixed_coface, {1, 1, 1.0}, {25, 50, 100, 200});

  const auto sm = convergence_table(Quantity::second_moment, {}, {100, 1000, 10000});
  CHECK(std::abs(sm[2].ratio - 1) < 0.05);
  CHECK(std::abs(sm[1].exact - sm[1].asymptotic) < std::abs(sm[0].exact - sm[0].asymptotic));
  CHECK(std::abs(sm[2].exact - sm[2].asymptotic) < std::abs(sm[1].exact - sm[1].asymptotic));

  CHECK(parse_quantity("poly") == Quantity::poisson_poly);
  CHECK_THROWS_AS(parse_quantity("nope"), DomainError);
  CHECK_THROWS_AS(convergence_table(Quantity::a_number, {-2, 0, 1.0}, {10}), DomainError);
}
