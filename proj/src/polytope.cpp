#include "zerocell/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "zerocell/cone.hpp"
#include "zerocell/numerics.hpp"

namespace zerocell::montecarlo {

using numerics::kPi;

namespace {

constexpr double kDegenerate = 1e-9;
// Orientation predicates: a few hundred ulps of the local coordinate scale.
constexpr double kRoundoff = 64 * std::numeric_limits<double>::epsilon();

double circumradius_of(const std::vector<Eigen::Vector3d>& pts) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, p.norm());
  return r;
}

// Unit normal of a planar loop (Newell); outward for loops oriented
// counterclockwise when seen from outside.
Eigen::Vector3d newell_normal(const std::vector<Eigen::Vector3d>& v, const std::vector<int>& loop) {
  Eigen::Vector3d n = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& a = v[loop[i]];
    const auto& b = v[loop[(i + 1) % loop.size()]];
    n.x() += (a.y() - b.y()) * (a.z() + b.z());
    n.y() += (a.z() - b.z()) * (a.x() + b.x());
    n.z() += (a.x() - b.x()) * (a.y() + b.y());
  }
  return n.normalized();
}

// Coordinate magnitude of a face and one more point.
double local_scale(const std::vector<Eigen::Vector3d>& v, const std::vector<int>& loop,
                   const Eigen::Vector3d& x) {
  double s = x.norm();
  for (int idx : loop) s = std::max(s, v[idx].norm());
  return std::max(s, 1e-300);
}

// Smallest signed distance from the origin to a facet hyperplane, positive
// when the origin is interior.
double inradius_of(const HalfspaceCell& cell) {
  double r = std::numeric_limits<double>::infinity();
  if (cell.dim == 2) {
    for (const auto& e : cell.faces) {
      const auto& a = cell.vertices[e[0]];
      const auto& b = cell.vertices[e[1]];
      const double cross = a.x() * b.y() - a.y() * b.x();
      r = std::min(r, cross / (b - a).head<2>().norm());
    }
  } else {
    for (const auto& f : cell.faces) {
      const Eigen::Vector3d n = newell_normal(cell.vertices, f);
      r = std::min(r, n.dot(cell.vertices[f[0]]));
    }
  }
  return r;
}

// ---- 2D clipping ----------------------------------------------------------

struct Ring {
  std::vector<Eigen::Vector3d> v;
  std::vector<long long> label;  // label[i]: edge v[i] -> v[i+1]; < 0 is artificial
};

Ring initial_square(double r) {
  Ring ring;
  ring.v = {{-r, -r, 0}, {r, -r, 0}, {r, r, 0}, {-r, r, 0}};
  ring.label = {-1, -2, -3, -4};
  return ring;
}

bool clip_ring(Ring& ring, const Eigen::Vector3d& n, double& t, long long label,
               long long& perturbations) {
  const std::size_t m = ring.v.size();
  std::vector<double> s(m);
  for (int attempt = 0;; ++attempt) {
    bool degenerate = false;
    for (std::size_t i = 0; i < m; ++i) {
      s[i] = n.dot(ring.v[i]) - t;
      if (std::abs(s[i]) < kDegenerate) degenerate = true;
    }
    if (!degenerate) break;
    if (attempt > 100) throw NumericError("zero cell: cannot resolve degenerate cut");
    t += kDegenerate;
    ++perturbations;
  }
  if (std::none_of(s.begin(), s.end(), [](double x) { return x > 0; })) return false;

  Ring out;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    if (s[i] < 0) {
      out.v.push_back(ring.v[i]);
      out.label.push_back(ring.label[i]);
    }
    if ((s[i] < 0) != (s[j] < 0)) {
      const double w = s[i] / (s[i] - s[j]);
      out.v.push_back(ring.v[i] + w * (ring.v[j] - ring.v[i]));
      out.label.push_back(s[i] < 0 ? label : ring.label[i]);
    }
  }
  ring = std::move(out);
  return true;
}

// ---- 3D clipping ----------------------------------------------------------

struct Solid {
  std::vector<Eigen::Vector3d> v;
  std::vector<std::vector<int>> loops;
  std::vector<long long> label;
};

Solid initial_cube(double r) {
  Solid s;
  for (int i = 0; i < 8; ++i)
    s.v.emplace_back(i & 1 ? r : -r, i & 2 ? r : -r, i & 4 ? r : -r);
  // Outward oriented quads.
  s.loops = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  s.label = {-1, -2, -3, -4, -5, -6};
  return s;
}

bool clip_solid(Solid& solid, const Eigen::Vector3d& n, double& t, long long label,
                long long& perturbations) {
  const std::size_t m = solid.v.size();
  std::vector<double> s(m);
  for (int attempt = 0;; ++attempt) {
    bool degenerate = false;
    for (std::size_t i = 0; i < m; ++i) {
      s[i] = n.dot(solid.v[i]) - t;
      if (std::abs(s[i]) < kDegenerate) degenerate = true;
    }
    if (!degenerate) break;
    if (attempt > 100) throw NumericError("zero cell: cannot resolve degenerate cut");
    t += kDegenerate;
    ++perturbations;
  }
  if (std::none_of(s.begin(), s.end(), [](double x) { return x > 0; })) return false;

  std::vector<Eigen::Vector3d> verts = solid.v;
  std::map<std::pair<int, int>, int> cut_vertex;
  auto crossing = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    const auto it = cut_vertex.find(key);
    if (it != cut_vertex.end()) return it->second;
    const double w = s[a] / (s[a] - s[b]);
    verts.push_back(solid.v[a] + w * (solid.v[b] - solid.v[a]));
    const int id = static_cast<int>(verts.size()) - 1;
    cut_vertex.emplace(key, id);
    return id;
  };

  Solid out;
  // Cap edges, one per cut face: exit -> entry in the face's orientation.
  std::map<int, int> cap_next;
  for (std::size_t f = 0; f < solid.loops.size(); ++f) {
    const auto& loop = solid.loops[f];
    std::vector<int> kept;
    int exit_v = -1, entry_v = -1;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % loop.size()];
      if (s[a] < 0) kept.push_back(a);
      if ((s[a] < 0) != (s[b] < 0)) {
        const int c = crossing(a, b);
        kept.push_back(c);
        (s[a] < 0 ? exit_v : entry_v) = c;
      }
    }
    if (kept.empty()) continue;
    if (exit_v >= 0) {
      if (entry_v < 0) throw NumericError("zero cell: inconsistent face cut");
      // The cap traverses this edge in the opposite direction.
      cap_next[entry_v] = exit_v;
    }
    out.loops.push_back(std::move(kept));
    out.label.push_back(solid.label[f]);
  }
  if (!cap_next.empty()) {
    std::vector<int> cap;
    const int start = cap_next.begin()->first;
    int cur = start;
    do {
      cap.push_back(cur);
      const auto it = cap_next.find(cur);
      if (it == cap_next.end() || cap.size() > cap_next.size())
        throw NumericError("zero cell: open cap loop");
      cur = it->second;
    } while (cur != start);
    if (cap.size() != cap_next.size()) throw NumericError("zero cell: split cap loop");
    out.loops.push_back(std::move(cap));
    out.label.push_back(label);
  }

  // Compact vertex storage.
  std::vector<int> remap(verts.size(), -1);
  for (auto& loop : out.loops) {
    for (int& idx : loop) {
      if (remap[idx] < 0) {
        remap[idx] = static_cast<int>(out.v.size());
        out.v.push_back(verts[idx]);
      }
      idx = remap[idx];
    }
  }
  solid = std::move(out);
  return true;
}

template <class Shape>
bool has_artificial(const Shape& shape) {
  return std::any_of(shape.label.begin(), shape.label.end(), [](long long l) { return l < 0; });
}

HalfspaceCell to_cell(const Ring& ring) {
  HalfspaceCell cell;
  cell.dim = 2;
  cell.vertices = ring.v;
  const int m = static_cast<int>(ring.v.size());
  for (int i = 0; i < m; ++i) cell.faces.push_back({i, (i + 1) % m});
  cell.circumradius = circumradius_of(cell.vertices);
  cell.inradius = inradius_of(cell);
  return cell;
}

HalfspaceCell to_cell(const Solid& solid) {
  HalfspaceCell cell;
  cell.dim = 3;
  cell.vertices = solid.v;
  cell.faces = solid.loops;
  cell.circumradius = circumradius_of(cell.vertices);
  cell.inradius = inradius_of(cell);
  return cell;
}

template <class Shape, class Clip>
HalfspaceCell run_zero_cell(Shape shape, int d, Rng& rng, const ZeroCellOptions& options,
                            Clip clip) {
  long long perturbations = 0;
  long long generated = 0;
  double distance = 0.0;
  int extra_left = -1;
  while (true) {
    distance += rng.exponential(2.0);
    const Eigen::VectorXd u = sample_sphere(d, rng);
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    n.head(d) = u;
    if (extra_left < 0) {
      const double reach = circumradius_of(shape.v);
      if (distance > reach) {
        if (has_artificial(shape))
          throw NumericError("zero cell: unbounded within the initial box");
        extra_left = options.extra_hyperplanes;
      }
    }
    if (extra_left == 0) break;
    if (extra_left > 0) --extra_left;
    if (++generated > options.max_hyperplanes)
      throw NumericError("zero cell: hyperplane cap of " + std::to_string(options.max_hyperplanes) +
                         " exceeded");
    double t = distance;
    clip(shape, n, t, generated, perturbations);
    distance = std::max(distance, t);
  }
  HalfspaceCell cell = to_cell(shape);
  cell.generated = generated;
  cell.perturbations = perturbations;
  if (!(cell.inradius > 0.0)) throw NumericError("zero cell: origin not interior");
  return cell;
}

// ---- hulls ----------------------------------------------------------------

double cross2(const Eigen::Vector3d& o, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double cross2_tol(const Eigen::Vector3d& o, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return kRoundoff * std::max({o.norm(), a.norm(), b.norm()}) * ((a - o).norm() + (b - o).norm());
}

struct Triangle {
  int a, b, c;
  Eigen::Vector3d normal;
  double offset;
};

Triangle make_triangle(const std::vector<Eigen::Vector3d>& p, int a, int b, int c) {
  const Eigen::Vector3d n = (p[b] - p[a]).cross(p[c] - p[a]).normalized();
  return {a, b, c, n, n.dot(p[a])};
}

}  // namespace

long long HalfspaceCell::edge_count() const {
  if (dim == 2) return static_cast<long long>(faces.size());
  long long sides = 0;
  for (const auto& f : faces) sides += static_cast<long long>(f.size());
  return sides / 2;
}

std::vector<long long> HalfspaceCell::fvector() const {
  if (dim == 2) return {vertex_count(), edge_count()};
  return {vertex_count(), edge_count(), facet_count()};
}

long long HalfspaceCell::euler_characteristic() const {
  if (dim == 2) return vertex_count() - edge_count();
  return vertex_count() - edge_count() + facet_count();
}

bool HalfspaceCell::simplicial() const {
  if (dim == 2) return true;
  std::map<std::pair<int, int>, std::vector<std::size_t>> owners;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (faces[f].size() != 3) return false;
    for (int i = 0; i < 3; ++i)
      owners[std::minmax(faces[f][i], faces[f][(i + 1) % 3])].push_back(f);
  }
  // Neighbours whose normals are within kDegenerate radians are coplanar.
  for (const auto& [edge, fs] : owners) {
    if (fs.size() != 2) return false;
    const Eigen::Vector3d n = newell_normal(vertices, faces[fs[0]]);
    const Eigen::Vector3d m = newell_normal(vertices, faces[fs[1]]);
    if (n.cross(m).norm() < kDegenerate && n.dot(m) > 0) return false;
  }
  return true;
}

HalfspaceCell simulate_zero_cell(int d, Rng& rng, const ZeroCellOptions& options) {
  if (d != 2 && d != 3) throw DomainError("simulate_zero_cell: d must be 2 or 3");
  if (options.extra_hyperplanes < 0) throw DomainError("simulate_zero_cell: extra must be >= 0");
  if (d == 2)
    return run_zero_cell(initial_square(options.initial_box), 2, rng, options, clip_ring);
  return run_zero_cell(initial_cube(options.initial_box), 3, rng, options, clip_solid);
}

HalfspaceCell convex_hull_2d(const std::vector<Eigen::Vector3d>& points) {
  if (points.size() < 3) throw NumericError("convex_hull_2d: need at least 3 points");
  std::vector<Eigen::Vector3d> p = points;
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Eigen::Vector3d> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p[i]) <= cross2_tol(h[k - 2], h[k - 1], p[i])) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], p[i]) <= cross2_tol(h[k - 2], h[k - 1], p[i]))
      --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw NumericError("convex_hull_2d: points are collinear");
  HalfspaceCell cell;
  cell.dim = 2;
  cell.vertices = h;
  const int m = static_cast<int>(h.size());
  for (int i = 0; i < m; ++i) cell.faces.push_back({i, (i + 1) % m});
  cell.circumradius = circumradius_of(h);
  cell.inradius = inradius_of(cell);
  return cell;
}

HalfspaceCell convex_hull_3d(const std::vector<Eigen::Vector3d>& p) {
  const int n = static_cast<int>(p.size());
  if (n < 4) throw NumericError("convex_hull_3d: need at least 4 points");
  const double scale = std::max(1e-300, circumradius_of(p));
  const double tol = kRoundoff * scale;

  // Initial tetrahedron from extreme points.
  int i0 = 0, i1 = 0, i2 = -1, i3 = -1;
  double best = -1.0;
  for (int i = 1; i < n; ++i)
    if ((p[i] - p[i0]).norm() > best) best = (p[i] - p[i0]).norm(), i1 = i;
  if (best <= tol) throw NumericError("convex_hull_3d: points coincide");
  const Eigen::Vector3d axis = (p[i1] - p[i0]).normalized();
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d w = p[i] - p[i0];
    const double dist = (w - w.dot(axis) * axis).norm();
    if (dist > best) best = dist, i2 = i;
  }
  if (best <= tol) throw NumericError("convex_hull_3d: points are collinear");
  const Eigen::Vector3d pn = (p[i1] - p[i0]).cross(p[i2] - p[i0]).normalized();
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double dist = std::abs(pn.dot(p[i] - p[i0]));
    if (dist > best) best = dist, i3 = i;
  }
  if (best <= tol) throw NumericError("convex_hull_3d: points are coplanar");

  const Eigen::Vector3d inner = (p[i0] + p[i1] + p[i2] + p[i3]) / 4.0;
  std::vector<Triangle> tris;
  auto add = [&](int a, int b, int c) {
    Triangle t = make_triangle(p, a, b, c);
    if (t.normal.dot(inner) - t.offset > 0) t = make_triangle(p, a, c, b);
    tris.push_back(t);
  };
  add(i0, i1, i2);
  add(i0, i1, i3);
  add(i0, i2, i3);
  add(i1, i2, i3);

  for (int q = 0; q < n; ++q) {
    if (q == i0 || q == i1 || q == i2 || q == i3) continue;
    std::vector<bool> visible(tris.size(), false);
    bool any = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& tr = tris[t];
      const double local = kRoundoff * std::max({p[tr.a].norm(), p[tr.b].norm(), p[tr.c].norm(), p[q].norm()});
      if (tr.normal.dot(p[q]) - tr.offset > local) visible[t] = any = true;
    }
    if (!any) continue;
    std::set<std::pair<int, int>> edges;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) continue;
      const auto& tr = tris[t];
      edges.insert({tr.a, tr.b});
      edges.insert({tr.b, tr.c});
      edges.insert({tr.c, tr.a});
    }
    std::vector<Triangle> next;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (!visible[t]) next.push_back(tris[t]);
    for (const auto& [a, b] : edges)
      if (!edges.count({b, a})) next.push_back(make_triangle(p, a, b, q));
    tris = std::move(next);
  }

  HalfspaceCell cell;
  cell.dim = 3;
  std::vector<int> remap(n, -1);
  for (const auto& t : tris) {
    std::vector<int> loop;
    for (int idx : {t.a, t.b, t.c}) {
      if (remap[idx] < 0) {
        remap[idx] = static_cast<int>(cell.vertices.size());
        cell.vertices.push_back(p[idx]);
      }
      loop.push_back(remap[idx]);
    }
    cell.faces.push_back(std::move(loop));
  }
  cell.circumradius = circumradius_of(cell.vertices);
  cell.inradius = inradius_of(cell);
  return cell;
}

HalfspaceCell simulate_poisson_polyhedron(int d, double alpha, Rng& rng,
                                          const PolyhedronOptions& options) {
  if (d != 2 && d != 3) throw DomainError("simulate_poisson_polyhedron: d must be 2 or 3");
  if (!(alpha > 0.0)) throw DomainError("simulate_poisson_polyhedron: alpha must be positive");
  if (options.extra_atoms < 0) throw DomainError("simulate_poisson_polyhedron: extra must be >= 0");
  const double omega = 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0);

  std::vector<Eigen::Vector3d> pts;
  HalfspaceCell hull;
  bool have_hull = false;
  double arrival = 0.0;
  long long generated = 0;
  int extra_left = -1;
  auto rebuild = [&]() {
    try {
      hull = d == 2 ? convex_hull_2d(pts) : convex_hull_3d(pts);
      have_hull = true;
      pts = hull.vertices;
    } catch (const NumericError&) {
      have_hull = false;
    }
  };
  while (true) {
    arrival += rng.exponential(1.0);
    const double radius = std::pow(omega / (alpha * arrival), 1.0 / alpha);
    const Eigen::VectorXd u = sample_sphere(d, rng);
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    x.head(d) = radius * u;

    if (extra_left < 0 && have_hull && hull.inradius > 0.0 && radius < hull.inradius)
      extra_left = options.extra_atoms;
    if (extra_left == 0) break;
    if (extra_left > 0) --extra_left;
    if (++generated > options.max_atoms)
      throw NumericError("poisson polyhedron: atom cap of " + std::to_string(options.max_atoms) +
                         " exceeded");

    if (have_hull) {
      bool inside = true;
      if (d == 2) {
        const int m = static_cast<int>(hull.vertices.size());
        for (int i = 0; i < m && inside; ++i) {
          const auto& a = hull.vertices[i];
          const auto& b = hull.vertices[(i + 1) % m];
          if (cross2(a, b, x) < -cross2_tol(a, b, x)) inside = false;
        }
      } else {
        for (const auto& f : hull.faces) {
          const Eigen::Vector3d n = newell_normal(hull.vertices, f);
          if (n.dot(x - hull.vertices[f[0]]) > kRoundoff * local_scale(hull.vertices, f, x)) {
            inside = false;
            break;
          }
        }
      }
      if (inside) continue;
    }
    pts.push_back(x);
    if (static_cast<int>(pts.size()) > d) rebuild();
    if (!have_hull && pts.size() > 1000)
      throw NumericError(
          "poisson polyhedron: no full-dimensional hull after 1000 atoms; radii span beyond double "
          "precision (alpha = " + std::to_string(alpha) + ")");
  }
  hull.generated = generated;
  if (d == 3 && !hull.simplicial())
    throw NumericError("poisson polyhedron: hull is not simplicial within tolerance");
  return hull;
}

}  // namespace zerocell::montecarlo
