#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "zerocell/angles.hpp"
#include "zerocell/cone.hpp"
#include "zerocell/facecounts.hpp"
#include "zerocell/polytope.hpp"
#include "zerocell/simulation.hpp"

using namespace zerocell;
using namespace zerocell::montecarlo;
using angles::ConeKind;
using angles::ConeSpec;

namespace {

// Residual of the best nonnegative combination, by trying every support set
// and keeping the feasible unconstrained least-squares solutions.
double brute_force_nnls_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.cols());
  double best = b.norm();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(cols[i]);
    const Eigen::VectorXd x = sub.completeOrthogonalDecomposition().solve(b);
    if ((x.array() < -1e-12).any()) continue;
    best = std::min(best, (sub * x - b).norm());
  }
  return best;
}

double label_value(const SimulationReport& r, const std::vector<double>& v, const std::string& label) {
  for (std::size_t i = 0; i < r.labels.size(); ++i)
    if (r.labels[i] == label) return v[i];
  FAIL("missing label " << label);
  return 0.0;
}

double diagnostic(const SimulationReport& r, const std::string& key) {
  for (const auto& [k, v] : r.diagnostics)
    if (k == key) return v;
  FAIL("missing diagnostic " << key);
  return 0.0;
}

ReplicationPlan plan(std::uint64_t seed, int streams = 4, int threads = 0) {
  ReplicationPlan p;
  p.seed = {seed, 0};
  p.streams = streams;
  p.threads = threads;
  return p;
}

}  // namespace

TEST_CASE("sphere samples have unit norm") {
  Rng rng({1, 0});
  for (int d : {1, 2, 3, 7, 50})
    for (int i = 0; i < 200; ++i) {
      CHECK(std::abs(sample_sphere(d, rng).norm() - 1.0) < 1e-12);
      const auto h = sample_halfsphere(d, rng);
      CHECK(std::abs(h.norm() - 1.0) < 1e-12);
      CHECK(h(0) >= 0.0);
    }
}

TEST_CASE("one-dimensional spheres") {
  Rng rng({2, 0});
  int plus = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_sphere(1, rng)(0);
    CHECK(std::abs(x) == 1.0);
    plus += x > 0;
    CHECK(sample_halfsphere(1, rng)(0) == 1.0);
  }
  CHECK(std::abs(plus - n / 2) < 3 * std::sqrt(n / 4.0));
}

TEST_CASE("empirical mean of sphere samples is near the origin") {
  Rng rng({3, 0});
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += sample_sphere(3, rng);
  CHECK((sum / n).norm() < 0.02);
}

TEST_CASE("cone membership examples") {
  Eigen::MatrixXd quadrant(2, 2);
  quadrant << 1, 0, 0, 1;
  CHECK(cone_contains(quadrant, quadrant.col(0)));
  CHECK_FALSE(cone_contains(quadrant, Eigen::Vector2d(-1, -1)));
  CHECK(cone_contains(quadrant, Eigen::Vector2d(0.3, 0.7)));
  CHECK_FALSE(cone_contains(quadrant, Eigen::Vector2d(-1e-3, 1.0)));
  Rng rng({4, 0});
  for (int i = 0; i < 50; ++i) {
    const auto g = sample_cone_generators({4, 2, ConeKind::full_sphere}, rng);
    for (int j = 0; j < g.cols(); ++j) CHECK(cone_contains(g, g.col(j)));
  }
}

TEST_CASE("NNLS agrees with brute-force support enumeration") {
  Rng rng({5, 0});
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 4;
    const int n = 1 + trial % 6;
    Eigen::MatrixXd a(d, n);
    for (int j = 0; j < n; ++j) a.col(j) = sample_sphere(d, rng);
    const Eigen::VectorXd b = sample_sphere(d, rng);
    const auto r = nnls(a, b);
    INFO("trial=" << trial);
    CHECK((r.coefficients.array() >= 0.0).all());
    CHECK(std::abs(r.residual_norm - (a * r.coefficients - b).norm()) < 1e-12);
    CHECK(std::abs(r.residual_norm - brute_force_nnls_residual(a, b)) < 1e-10);
  }
}

TEST_CASE("NNLS is deterministic") {
  Eigen::MatrixXd a(2, 3);
  a << 1, 1, 0, 0, 1, 1;
  const Eigen::Vector2d b(1, 1);
  const auto x = nnls(a, b), y = nnls(a, b);
  CHECK(x.coefficients == y.coefficients);
  CHECK(x.iterations == y.iterations);
  CHECK(x.residual_norm < 1e-14);
}

TEST_CASE("solid angle examples") {
  Rng rng({6, 0});
  Eigen::MatrixXd ray(2, 1);
  ray << 0.6, 0.8;
  const auto r = estimate_solid_angle(ray, 10000, rng);
  CHECK(r.hits == 0);
  CHECK(r.estimate == 0.0);

  for (int d : {1, 3, 5}) {
    Eigen::MatrixXd pm(d, 2 * d);
    pm << Eigen::MatrixXd::Identity(d, d), -Eigen::MatrixXd::Identity(d, d);
    const auto full = estimate_solid_angle(pm, 2000, rng);
    CHECK(full.estimate == 1.0);
    CHECK(full.std_error == 0.0);
  }

  Eigen::MatrixXd quadrant = Eigen::MatrixXd::Identity(2, 2);
  const auto q = estimate_solid_angle(quadrant, 100000, rng);
  CHECK(q.trials == 100000);
  CHECK(q.estimate == static_cast<double>(q.hits) / q.trials);
  CHECK(q.std_error == doctest::Approx(std::sqrt(q.estimate * (1 - q.estimate) / q.trials)));
  CHECK(std::abs(q.estimate - 0.25) < 3 * q.std_error);
}

TEST_CASE("quadrant estimator coverage") {
  const Eigen::MatrixXd quadrant = Eigen::MatrixXd::Identity(2, 2);
  int covered = 0;
  const int reps = 1000;
  for (int i = 0; i < reps; ++i) {
    Rng rng(derive_substream({7, 0}, static_cast<std::uint64_t>(i)));
    const auto e = estimate_solid_angle(quadrant, 1000, rng);
    covered += std::abs(e.estimate - 0.25) <= 2 * e.std_error;
  }
  CHECK(covered >= 930);
}

TEST_CASE("expected cone angles against the exact values") {
  struct Case {
    ConeSpec spec;
    double exact;
  };
  for (const auto& c : {Case{{3, 0, ConeKind::full_sphere}, 0.125},
                        Case{{2, 0, ConeKind::half_sphere}, 1.0 / 6.0},
                        Case{{1, 1, ConeKind::full_sphere}, 0.75},
                        Case{{2, 1, ConeKind::half_sphere}, angles::halfsphere_angle_exact(2, 1)}}) {
    const auto r = estimate_expected_angle(c.spec, 2000, 400, plan(11));
    INFO("d=" << c.spec.d << " ell=" << c.spec.ell);
    CHECK(r.exact[0] == doctest::Approx(c.exact).epsilon(1e-12));
    CHECK(std::abs(r.estimates[0] - c.exact) < 3 * r.std_error[0]);
    CHECK(r.z[0] == doctest::Approx((r.estimates[0] - r.exact[0]) / r.std_error[0]));
  }
  CHECK_THROWS_AS(estimate_expected_angle({51, 0, ConeKind::full_sphere}, 1, 1, plan(1)), DomainError);
}

TEST_CASE("planar zero cells are polygons") {
  Rng rng({8, 0});
  for (int i = 0; i < 2000; ++i) {
    const auto c = simulate_zero_cell(2, rng);
    REQUIRE(c.dim == 2);
    CHECK(c.vertex_count() == c.edge_count());
    CHECK(c.vertex_count() >= 3);
    CHECK(c.euler_characteristic() == 0);
    CHECK(c.inradius > 0.0);
    CHECK(c.inradius <= c.circumradius);
  }
}

TEST_CASE("spatial zero cells satisfy Euler and are simple") {
  Rng rng({9, 0});
  for (int i = 0; i < 1000; ++i) {
    const auto c = simulate_zero_cell(3, rng);
    REQUIRE(c.dim == 3);
    CHECK(c.euler_characteristic() == 2);
    // Every vertex of a simple polytope has three edges.
    CHECK(2 * c.edge_count() == 3 * c.vertex_count());
    for (const auto& v : c.vertices) CHECK(v.norm() <= c.circumradius * (1 + 1e-12));
  }
}

TEST_CASE("stopping rule is exact for zero cells") {
  for (int d : {2, 3}) {
    ZeroCellOptions more;
    more.extra_hyperplanes = 10;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      Rng a({100 + s, static_cast<std::uint64_t>(d)}), b({100 + s, static_cast<std::uint64_t>(d)});
      const auto base = simulate_zero_cell(d, a);
      const auto extended = simulate_zero_cell(d, b, more);
      INFO("d=" << d << " seed=" << s);
      CHECK(base.fvector() == extended.fvector());
      CHECK(extended.generated == base.generated + 10);
    }
  }
}

TEST_CASE("stopping rule is exact for Poisson polyhedra") {
  for (int d : {2, 3})
    for (double alpha : {1.0, 2.0}) {
      PolyhedronOptions more;
      more.extra_atoms = 10;
      for (std::uint64_t s = 0; s < 300; ++s) {
        Rng a({500 + s, 0}), b({500 + s, 0});
        const auto base = simulate_poisson_polyhedron(d, alpha, a);
        const auto extended = simulate_poisson_polyhedron(d, alpha, b, more);
        INFO("d=" << d << " alpha=" << alpha << " seed=" << s);
        CHECK(base.fvector() == extended.fvector());
        CHECK(base.vertices.size() == extended.vertices.size());
      }
    }
}

TEST_CASE("spatial Poisson polyhedra are simplicial") {
  Rng rng({10, 0});
  for (double alpha : {0.7, 1.0, 2.5})
    for (int i = 0; i < 300; ++i) {
      const auto h = simulate_poisson_polyhedron(3, alpha, rng);
      CHECK(h.simplicial());
      CHECK(h.euler_characteristic() == 2);
      CHECK(3 * h.facet_count() == 2 * h.edge_count());
    }
}

TEST_CASE("same-seed zero cell and alpha = 1 polyhedron are polar") {
  // Both draw Exp(1) increments and directions in the same order, so the
  // hyperplanes of one are the polar images of the atoms of the other.
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng a({s, 42}), b({s, 42});
    const auto cell = simulate_zero_cell(3, a);
    const auto hull = simulate_poisson_polyhedron(3, 1.0, b);
    const auto fc = cell.fvector(), fh = hull.fvector();
    INFO("seed=" << s);
    CHECK(fc[0] == fh[2]);
    CHECK(fc[1] == fh[1]);
    CHECK(fc[2] == fh[0]);
  }
}

TEST_CASE("planar zero cell mean vertex count") {
  const auto r = estimate_zero_cell_fvector(2, 4000, plan(12));
  const double exact = facecounts::zero_cell_expected_faces(2, 0);
  CHECK(label_value(r, r.exact, "f0") == doctest::Approx(exact));
  CHECK(std::abs(label_value(r, r.estimates, "f0") - exact) < 3 * label_value(r, r.std_error, "f0"));
  CHECK(diagnostic(r, "euler_failures") == 0.0);
  CHECK(diagnostic(r, "f0_variance") > 0.0);
}

TEST_CASE("spatial zero cell mean facet count") {
  const auto r = estimate_zero_cell_fvector(3, 2000, plan(13));
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    INFO(r.labels[i]);
    CHECK(std::abs(r.estimates[i] - r.exact[i]) < 3 * r.std_error[i]);
  }
  CHECK(label_value(r, r.exact, "f2") ==
        doctest::Approx(facecounts::zero_cell_expected_faces(3, 2)));
  CHECK(diagnostic(r, "euler_failures") == 0.0);
}

TEST_CASE("planar alpha = 2 polyhedron has six vertices on average") {
  const auto r = estimate_poisson_polyhedron_fvector(2, 2.0, 10000, plan(14));
  CHECK(label_value(r, r.exact, "f0") == doctest::Approx(6.0));
  CHECK(std::abs(label_value(r, r.estimates, "f0") - 6.0) < 3 * label_value(r, r.std_error, "f0"));
}

TEST_CASE("alpha = 1 hull vertex count matches the zero cell facet count") {
  const auto r = estimate_poisson_polyhedron_fvector(3, 1.0, 5000, plan(15));
  const double exact = facecounts::zero_cell_expected_faces(3, 2);
  CHECK(label_value(r, r.exact, "f0") == doctest::Approx(exact).epsilon(1e-8));
  CHECK(std::abs(label_value(r, r.estimates, "f0") - exact) < 3 * label_value(r, r.std_error, "f0"));
}

TEST_CASE("reports are reproducible and independent of the thread count") {
  const auto a = estimate_zero_cell_fvector(3, 300, plan(16, 6, 1)).to_json();
  const auto b = estimate_zero_cell_fvector(3, 300, plan(16, 6, 4)).to_json();
  const auto c = estimate_zero_cell_fvector(3, 300, plan(16, 6, 0)).to_json();
  CHECK(a == b);
  CHECK(a == c);
  const auto d = estimate_zero_cell_fvector(3, 300, plan(17, 6, 1)).to_json();
  CHECK(a != d);
  const auto e = estimate_expected_angle({3, 1, ConeKind::half_sphere}, 100, 50, plan(18, 3, 2));
  const auto f = estimate_expected_angle({3, 1, ConeKind::half_sphere}, 100, 50, plan(18, 3, 3));
  CHECK(e.to_json() == f.to_json());
}

TEST_CASE("report JSON layout") {
  const auto r = estimate_poisson_polyhedron_fvector(2, 2.0, 50, plan(19, 2, 1));
  const auto j = r.to_json();
  const auto pos = [&](const char* key) { return j.find(std::string("\"") + key + "\""); };
  CHECK(pos("experiment") < pos("params"));
  CHECK(pos("params") < pos("seed"));
  CHECK(pos("seed") < pos("stream"));
  CHECK(pos("n") < pos("estimates"));
  CHECK(pos("estimates") < pos("stderr"));
  CHECK(pos("stderr") < pos("exact"));
  CHECK(pos("exact") < pos("z"));
  CHECK(pos("z") != std::string::npos);
}

TEST_CASE("substreams") {
  const RngSeed s{2024, 0};
  CHECK(!(derive_substream(s, 0) == derive_substream(s, 1)));
  CHECK(derive_substream(s, 5) == derive_substream(s, 5));
  std::set<std::uint64_t> ids, first;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto sub = derive_substream(s, i);
    ids.insert(sub.stream_id);
    Rng rng(sub);
    first.insert(rng.next());
  }
  CHECK(ids.size() == 1000);
  CHECK(first.size() == 1000);
  Rng x({1, 2}), y({1, 2}), z({1, 3});
  for (int i = 0; i < 100; ++i) {
    const auto v = x.next();
    CHECK(v == y.next());
  }
  CHECK(x.next() != z.next());
}

TEST_CASE("variates") {
  Rng rng({20, 0});
  double sum = 0, sum_sq = 0, exp_sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.uniform_open_low() > 0.0);
    const double g = rng.normal();
    sum += g;
    sum_sq += g * g;
    exp_sum += rng.exponential(2.0);
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
  CHECK(std::abs(exp_sum / n - 0.5) < 0.01);
}

TEST_CASE("domain errors") {
  Rng rng({21, 0});
  CHECK_THROWS_AS(simulate_zero_cell(4, rng), DomainError);
  CHECK_THROWS_AS(simulate_poisson_polyhedron(3, 0.0, rng), DomainError);
  CHECK_THROWS_AS(sample_sphere(0, rng), DomainError);
  ReplicationPlan bad;
  bad.streams = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
