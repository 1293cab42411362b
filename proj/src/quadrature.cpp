#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "zerocell/numerics.hpp"

namespace zerocell::numerics {
namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Sample {
  double value;
  double modulus;
};

// Scaled integrand: value and modulus, both already divided by exp(shift).
using Kernel = std::function<Sample(double)>;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double integral = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  }
};

Sample checked(const Kernel& g, double x) {
  const Sample s = g(x);
  if (!std::isfinite(s.value) || !std::isfinite(s.modulus)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quadrature: non-finite integrand value at x = " << x;
    throw NumericError(msg.str());
  }
  return s;
}

Panel gauss_kronrod(const Kernel& g, double a, double b, int& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Sample fc = checked(g, center);
  double kronrod = fc.value * kWgk[7];
  double gauss = fc.value * kWg[3];
  double l1 = fc.modulus * kWgk[7];
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Sample lo = checked(g, center - dx);
    const Sample hi = checked(g, center + dx);
    f1[j] = lo.value;
    f2[j] = hi.value;
    kronrod += kWgk[j] * (lo.value + hi.value);
    l1 += kWgk[j] * (lo.modulus + hi.modulus);
    if (j % 2 == 1) gauss += kWg[j / 2] * (lo.value + hi.value);
  }
  evaluations += 15;
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc.value - mean);
  for (int j = 0; j < 7; ++j)
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  Panel p;
  p.a = a;
  p.b = b;
  p.integral = kronrod * half;
  p.l1 = std::abs(half) * l1;
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double floor = 50.0 * kEps * p.l1;
  if (p.l1 > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(floor, err);
  p.error = err;
  return p;
}

// Global adaptive refinement over the given initial breakpoints; the
// tolerance target is max(rel_tol * |I|, abs_floor) in scaled units.
QuadratureResult adapt(const Kernel& g, const std::vector<double>& breaks,
                       const QuadratureSettings& settings, double abs_floor) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  QuadratureResult out;
  int evaluations = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    queue.push(gauss_kronrod(g, breaks[i], breaks[i + 1], evaluations));

  auto totals = [&queue](double& integral, double& error, double& l1) {
    // Sum in a fixed order so the result does not depend on heap layout.
    auto copy = queue;
    std::vector<Panel> panels;
    panels.reserve(copy.size());
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    integral = error = l1 = 0.0;
    for (const auto& p : panels) {
      integral += p.integral;
      error += p.error;
      l1 += p.l1;
    }
  };

  double integral = 0.0, error = 0.0, l1 = 0.0;
  // Running sums for the loop test; exact totals are recomputed at the end.
  for (auto copy = queue; !copy.empty(); copy.pop()) {
    integral += copy.top().integral;
    error += copy.top().error;
    l1 += copy.top().l1;
  }
  const auto target = [&](double value) {
    return std::max(settings.rel_tol * std::abs(value), abs_floor);
  };
  while (error > target(integral) &&
         static_cast<int>(queue.size()) < settings.max_subdivisions) {
    const Panel worst = queue.top();
    if (worst.error <= 50.0 * kEps * worst.l1) break;  // roundoff-limited
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    queue.pop();
    const Panel left = gauss_kronrod(g, worst.a, mid, evaluations);
    const Panel right = gauss_kronrod(g, mid, worst.b, evaluations);
    integral += left.integral + right.integral - worst.integral;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }
  totals(integral, error, l1);
  out.mantissa = integral;
  out.error = error;
  out.l1_norm = l1;
  out.converged = error <= target(integral);
  out.subdivisions = static_cast<int>(queue.size());
  out.evaluations = evaluations;
  return out;
}

double scaled_abs_floor(const QuadratureSettings& settings, double shift) {
  if (!(settings.abs_tol > 0.0)) return 0.0;
  const double log_floor = std::log(settings.abs_tol) - shift;
  if (log_floor > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(log_floor);
}

}  // namespace

QuadratureResult integrate_halfline(const ScaledIntegrand& f,
                                    const QuadratureSettings& settings) {
  settings.validate();
  const double drop = settings.tail_log_drop;

  auto log_mag = [&f](double x) {
    const ScaledComplex v = f(x);
    if (std::isnan(v.log_mag()) || std::isnan(v.phase()) || v.log_mag() == INFINITY) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrate_halfline: non-finite integrand value at x = " << x;
      throw NumericError(msg.str());
    }
    return v.log_mag();
  };

  // Locate the peak on a coarse scan while extending the cutoff.
  constexpr int kScan = 32;
  double peak = log_mag(0.0);
  double peak_at = 0.0;
  auto scan = [&](double from, double to) {
    for (int i = 1; i <= kScan; ++i) {
      const double x = from + (to - from) * i / kScan;
      const double v = log_mag(x);
      if (v > peak) {
        peak = v;
        peak_at = x;
      }
    }
  };
  double cutoff = 1.0;
  scan(0.0, cutoff);
  int doublings = 0;
  while (peak == kNegInf || log_mag(cutoff) > peak - drop) {
    if (++doublings > 40)
      throw NumericError("integrate_halfline: integrand does not decay");
    scan(cutoff, 2.0 * cutoff);
    cutoff *= 2.0;
  }
  // Shrink while the upper half is entirely negligible.
  while (cutoff > 1e-8 && peak_at < 0.5 * cutoff &&
         log_mag(0.5 * cutoff) <= peak - drop) {
    cutoff *= 0.5;
  }

  const double shift = peak;
  Kernel g = [&f, shift](double x) {
    const ScaledComplex v = f(x);
    if (v.is_zero()) return Sample{0.0, 0.0};
    const double m = std::exp(v.log_mag() - shift);
    return Sample{m * std::cos(v.phase()), m};
  };

  constexpr int kInitialPanels = 16;
  std::vector<double> breaks;
  for (int i = 0; i <= kInitialPanels; ++i) breaks.push_back(cutoff * i / kInitialPanels);
  if (peak_at > 0.0) {
    breaks.push_back(peak_at);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  }

  QuadratureResult out = adapt(g, breaks, settings, scaled_abs_floor(settings, shift));
  out.log_scale = shift;
  out.cutoff = cutoff;
  return out;
}

QuadratureResult integrate_interval(const RealIntegrand& f, double a, double b,
                                    const QuadratureSettings& settings) {
  settings.validate();
  if (!(a <= b)) throw DomainError("integrate_interval: require a <= b");
  if (a == b) return QuadratureResult{0.0, 0.0, 0.0, 0.0, true, 0, 0, b};
  Kernel g = [&f](double x) {
    const double v = f(x);
    return Sample{v, std::abs(v)};
  };
  constexpr int kInitialPanels = 4;
  std::vector<double> breaks;
  for (int i = 0; i <= kInitialPanels; ++i) breaks.push_back(a + (b - a) * i / kInitialPanels);
  breaks.back() = b;
  QuadratureResult out = adapt(g, breaks, settings, scaled_abs_floor(settings, 0.0));
  out.cutoff = b;
  return out;
}

QuadratureResult integrate_interval_log(const LogIntegrand& log_f, double a,
                                        double b,
                                        const QuadratureSettings& settings) {
  settings.validate();
  if (!(a < b)) throw DomainError("integrate_interval_log: require a < b");
  auto safe = [&log_f](double x) {
    const double v = log_f(x);
    if (std::isnan(v) || v == INFINITY) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrate_interval_log: non-finite integrand value at x = " << x;
      throw NumericError(msg.str());
    }
    return v;
  };
  // Coarse scan, then golden-section polish around the best node.
  constexpr int kScan = 64;
  double best_x = a, best = kNegInf;
  for (int i = 0; i <= kScan; ++i) {
    const double x = a + (b - a) * i / kScan;
    const double v = safe(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  if (best == kNegInf) return QuadratureResult{0.0, 0.0, 0.0, 0.0, true, 0, 0, b};
  const double h = (b - a) / kScan;
  const Maximum polished = maximize_unimodal(
      safe, std::max(a, best_x - h), std::min(b, best_x + h), 1e-12 * (b - a));
  double peak_at = best_x;
  double shift = best;
  if (polished.value > best) {
    peak_at = polished.argmax;
    shift = polished.value;
  }

  Kernel g = [&safe, shift](double x) {
    const double v = safe(x);
    if (v == kNegInf) return Sample{0.0, 0.0};
    const double e = std::exp(v - shift);
    return Sample{e, e};
  };
  constexpr int kInitialPanels = 8;
  std::vector<double> breaks;
  for (int i = 0; i <= kInitialPanels; ++i) breaks.push_back(a + (b - a) * i / kInitialPanels);
  breaks.back() = b;
  if (peak_at > a && peak_at < b) breaks.push_back(peak_at);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  QuadratureResult out = adapt(g, breaks, settings, scaled_abs_floor(settings, shift));
  out.log_scale = shift;
  out.cutoff = b;
  return out;
}

}  // namespace zerocell::numerics
