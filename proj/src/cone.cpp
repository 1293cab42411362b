#include "zerocell/cone.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace zerocell::montecarlo {

Eigen::VectorXd sample_sphere(int d, Rng& rng) {
  if (d < 1) throw DomainError("sample_sphere: d must be >= 1");
  Eigen::VectorXd v(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

Eigen::VectorXd sample_halfsphere(int d, Rng& rng) {
  Eigen::VectorXd v = sample_sphere(d, rng);
  if (v[0] < 0.0) v[0] = -v[0];
  return v;
}

Eigen::MatrixXd sample_cone_generators(const angles::ConeSpec& spec, Rng& rng) {
  spec.validate();
  Eigen::MatrixXd g(spec.d, spec.d + spec.ell);
  for (int j = 0; j < g.cols(); ++j)
    g.col(j) = spec.kind == angles::ConeKind::full_sphere ? sample_sphere(spec.d, rng)
                                                          : sample_halfsphere(spec.d, rng);
  return g;
}

namespace {

// Least squares on the passive columns; returns the full-length vector with
// zeros outside the passive set.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<int> cols;
  for (int j = 0; j < static_cast<int>(passive.size()); ++j)
    if (passive[j]) cols.push_back(j);
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(cols[i]);
  const Eigen::VectorXd z = sub.colPivHouseholderQr().solve(b);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t i = 0; i < cols.size(); ++i) full[cols[i]] = z[static_cast<Eigen::Index>(i)];
  return full;
}

[[noreturn]] void nnls_failure(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "nnls: iteration cap exceeded\nA =\n" << a << "\nb =\n" << b.transpose();
  throw NumericError(msg.str());
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != b.size()) throw DomainError("nnls: dimension mismatch");
  if (a.cols() < 1) throw DomainError("nnls: need at least one column");
  const int n = static_cast<int>(a.cols());
  const int cap = 3 * n + 3;
  const double dual_tol = 1e-12 * std::max(1.0, a.norm() * b.norm());

  std::vector<bool> passive(n, false);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w = a.transpose() * b;
  int iterations = 0;
  while (true) {
    int enter = -1;
    double best = dual_tol;
    for (int j = 0; j < n; ++j) {
      if (!passive[j] && w[j] > best) {
        best = w[j];
        enter = j;
      }
    }
    if (enter < 0) break;
    if (++iterations > cap) nnls_failure(a, b);
    passive[enter] = true;

    Eigen::VectorXd z = passive_solve(a, b, passive);
    int inner = 0;
    while (true) {
      bool feasible = true;
      for (int j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0.0) feasible = false;
      if (feasible) break;
      if (++inner > cap) nnls_failure(a, b);
      double step = 1.0;
      for (int j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0.0) step = std::min(step, x[j] / (x[j] - z[j]));
      x += step * (z - x);
      for (int j = 0; j < n; ++j) {
        if (passive[j] && x[j] <= 1e-15) {
          passive[j] = false;
          x[j] = 0.0;
        }
      }
      z = passive_solve(a, b, passive);
    }
    x = z;
    w = a.transpose() * (b - a * x);
  }
  return {x, (a * x - b).norm(), iterations};
}

bool cone_contains(const Eigen::MatrixXd& generators, const Eigen::VectorXd& x, double tol) {
  if (generators.cols() < 1) throw DomainError("cone_contains: need at least one generator");
  if (!x.allFinite() || !generators.allFinite())
    throw DomainError("cone_contains: coordinates must be finite");
  const auto result = nnls(generators, x);
  return result.residual_norm <= tol * x.norm();
}

SolidAngleEstimate estimate_solid_angle(const Eigen::MatrixXd& generators, long long trials,
                                        Rng& rng) {
  if (trials < 1) throw DomainError("estimate_solid_angle: trials must be >= 1");
  const int d = static_cast<int>(generators.rows());
  SolidAngleEstimate out;
  out.trials = trials;
  for (long long t = 0; t < trials; ++t)
    if (cone_contains(generators, sample_sphere(d, rng))) ++out.hits;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace zerocell::montecarlo
