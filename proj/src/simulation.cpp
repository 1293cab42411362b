#include "zerocell/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <json.hpp>
#include <limits>
#include <string>
#include <thread>

#include "zerocell/cone.hpp"
#include "zerocell/facecounts.hpp"
#include "zerocell/polytope.hpp"

namespace zerocell::montecarlo {

namespace {

using Sample = std::vector<double>;

// Runs replication blocks on worker threads; block s covers replications
// [s n / streams, (s + 1) n / streams) and the merge is in block order.
template <class Fn>
std::vector<Sample> replicate(long long n, const ReplicationPlan& plan, Fn one) {
  plan.validate();
  const int streams = plan.streams;
  std::vector<std::vector<Sample>> blocks(streams);
  std::vector<std::exception_ptr> errors(streams);
  auto work = [&](int s) {
    try {
      Rng rng(derive_substream(plan.seed, static_cast<std::uint64_t>(s)));
      const long long lo = n * s / streams;
      const long long hi = n * (s + 1) / streams;
      for (long long i = lo; i < hi; ++i) blocks[s].push_back(one(rng));
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };
  const int threads = resolve_thread_count(plan.threads, streams);
  if (threads <= 1) {
    for (int s = 0; s < streams; ++s) work(s);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int s = t; s < streams; s += threads) work(s);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Sample> all;
  all.reserve(static_cast<std::size_t>(n));
  for (auto& b : blocks)
    for (auto& x : b) all.push_back(std::move(x));
  return all;
}

struct Moments {
  std::vector<double> mean, variance;
};

Moments moments(const std::vector<Sample>& xs) {
  Moments m;
  if (xs.empty()) return m;
  const std::size_t dim = xs.front().size();
  m.mean.assign(dim, 0.0);
  m.variance.assign(dim, 0.0);
  // Welford, in replication order.
  double count = 0.0;
  for (const auto& x : xs) {
    count += 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double delta = x[j] - m.mean[j];
      m.mean[j] += delta / count;
      m.variance[j] += delta * (x[j] - m.mean[j]);
    }
  }
  for (auto& v : m.variance) v = count > 1 ? v / (count - 1.0) : 0.0;
  return m;
}

void fill(SimulationReport& r, const std::vector<Sample>& xs, std::size_t first, std::size_t count,
          const std::vector<double>& exact) {
  const Moments m = moments(xs);
  const double n = static_cast<double>(xs.size());
  for (std::size_t j = first; j < first + count; ++j) {
    const double se = std::sqrt(m.variance[j] / n);
    r.estimates.push_back(m.mean[j]);
    r.std_error.push_back(se);
    const double e = exact[j - first];
    r.exact.push_back(e);
    r.z.push_back(se > 0 ? (m.mean[j] - e) / se : std::numeric_limits<double>::quiet_NaN());
  }
}

double sum_column(const std::vector<Sample>& xs, std::size_t j) {
  double s = 0.0;
  for (const auto& x : xs) s += x[j];
  return s;
}

nlohmann::ordered_json json_number(double x, int precision) {
  if (!std::isfinite(x)) return nullptr;
  if (precision <= 0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return std::strtod(buf, nullptr);
}

}  // namespace

void ReplicationPlan::validate() const {
  if (streams < 1) throw DomainError("replication plan: streams must be >= 1");
  if (threads < 0) throw DomainError("replication plan: threads must be >= 0");
}

int resolve_thread_count(int requested, int streams) {
  int threads = requested;
  if (threads <= 0) {
    if (const char* env = std::getenv("ZEROCELL_THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(threads, 1, std::max(1, streams));
}

std::string SimulationReport::to_json(int precision) const {
  auto number = [precision](double x) { return json_number(x, precision); };
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  auto& p = j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = number(v);
  j["seed"] = seed.seed;
  j["stream"] = seed.stream_id;
  j["streams"] = streams;
  j["n"] = n;
  j["labels"] = labels;
  auto array = [&number](const std::vector<double>& xs) {
    auto a = nlohmann::ordered_json::array();
    for (double x : xs) a.push_back(number(x));
    return a;
  };
  j["estimates"] = array(estimates);
  j["stderr"] = array(std_error);
  j["exact"] = array(exact);
  j["z"] = array(z);
  auto& d = j["diagnostics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : diagnostics) d[k] = number(v);
  return j.dump(2);
}

SimulationReport estimate_expected_angle(const angles::ConeSpec& spec, long long cones,
                                         long long trials_per_cone, const ReplicationPlan& plan) {
  spec.validate();
  if (spec.d > 50) throw DomainError("expected angle simulation: d must be <= 50");
  if (cones < 1 || trials_per_cone < 1)
    throw DomainError("expected angle simulation: cones and trials must be >= 1");
  const auto xs = replicate(cones, plan, [&](Rng& rng) {
    const Eigen::MatrixXd g = sample_cone_generators(spec, rng);
    const auto est = estimate_solid_angle(g, trials_per_cone, rng);
    return Sample{est.estimate};
  });
  SimulationReport r;
  r.experiment = "cone";
  r.params = {{"d", spec.d},
              {"ell", spec.ell},
              {"half_sphere", spec.kind == angles::ConeKind::half_sphere ? 1.0 : 0.0},
              {"trials", static_cast<double>(trials_per_cone)}};
  r.seed = plan.seed;
  r.streams = plan.streams;
  r.n = cones;
  r.labels = {"expected_angle"};
  fill(r, xs, 0, 1, {angles::expected_angle(spec)});
  r.diagnostics = {{"angle_variance", moments(xs).variance[0]}};
  return r;
}

SimulationReport estimate_zero_cell_fvector(int d, long long samples, const ReplicationPlan& plan) {
  if (d != 2 && d != 3) throw DomainError("zero cell simulation: d must be 2 or 3");
  if (samples < 1) throw DomainError("zero cell simulation: samples must be >= 1");
  // Columns: f_0..f_{d-1}, Euler defect, hyperplanes used, perturbations.
  const auto xs = replicate(samples, plan, [&](Rng& rng) {
    const HalfspaceCell cell = simulate_zero_cell(d, rng);
    Sample x;
    for (long long f : cell.fvector()) x.push_back(static_cast<double>(f));
    x.push_back(cell.euler_characteristic() == (d == 2 ? 0 : 2) ? 0.0 : 1.0);
    x.push_back(static_cast<double>(cell.generated));
    x.push_back(static_cast<double>(cell.perturbations));
    return x;
  });
  SimulationReport r;
  r.experiment = "zero-cell";
  r.params = {{"d", d}};
  r.seed = plan.seed;
  r.streams = plan.streams;
  r.n = samples;
  std::vector<double> exact;
  for (int ell = 0; ell < d; ++ell) {
    r.labels.push_back("f" + std::to_string(ell));
    exact.push_back(facecounts::zero_cell_expected_faces(d, ell));
  }
  fill(r, xs, 0, d, exact);
  const Moments m = moments(xs);
  r.diagnostics = {{"f0_variance", m.variance[0]},
                   {"euler_failures", sum_column(xs, d)},
                   {"mean_hyperplanes", m.mean[d + 1]},
                   {"perturbations", sum_column(xs, d + 2)}};
  return r;
}

SimulationReport estimate_poisson_polyhedron_fvector(int d, double alpha, long long samples,
                                                     const ReplicationPlan& plan) {
  if (d != 2 && d != 3) throw DomainError("polyhedron simulation: d must be 2 or 3");
  if (!(alpha > 0.0)) throw DomainError("polyhedron simulation: alpha must be positive");
  if (samples < 1) throw DomainError("polyhedron simulation: samples must be >= 1");
  const auto xs = replicate(samples, plan, [&](Rng& rng) {
    const HalfspaceCell hull = simulate_poisson_polyhedron(d, alpha, rng);
    Sample x;
    for (long long f : hull.fvector()) x.push_back(static_cast<double>(f));
    x.push_back(hull.euler_characteristic() == (d == 2 ? 0 : 2) ? 0.0 : 1.0);
    x.push_back(static_cast<double>(hull.generated));
    return x;
  });
  SimulationReport r;
  r.experiment = "poisson-poly";
  r.params = {{"d", d}, {"alpha", alpha}};
  r.seed = plan.seed;
  r.streams = plan.streams;
  r.n = samples;
  std::vector<double> exact;
  for (int k = 1; k <= d; ++k) {
    r.labels.push_back("f" + std::to_string(k - 1));
    exact.push_back(facecounts::poisson_polyhedron_expected_faces(d, k, alpha));
  }
  fill(r, xs, 0, d, exact);
  const Moments m = moments(xs);
  r.diagnostics = {{"f0_variance", m.variance[0]},
                   {"euler_failures", sum_column(xs, d)},
                   {"mean_atoms", m.mean[d + 1]}};
  return r;
}

}  // namespace zerocell::montecarlo
