#pragma once

#include <Eigen/Dense>
#include <vector>

#include "zerocell/rng.hpp"

namespace zerocell::montecarlo {

/// A bounded convex polygon (dim 2) or polyhedron (dim 3) containing the
/// origin. In 2D `faces` holds the edges as vertex pairs in ring order; in 3D
/// each face is a vertex loop. Vertices of 2D cells have z = 0.
struct HalfspaceCell {
  int dim = 3;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::vector<int>> faces;
  double circumradius = 0.0;
  /// Smallest distance from the origin to a facet hyperplane.
  double inradius = 0.0;
  /// Hyperplanes (zero cell) or atoms (hull) consumed, and degenerate cuts
  /// resolved by perturbation.
  long long generated = 0;
  long long perturbations = 0;

  long long vertex_count() const { return static_cast<long long>(vertices.size()); }
  long long edge_count() const;
  long long facet_count() const { return static_cast<long long>(faces.size()); }
  /// f_0, ..., f_{dim-1}.
  std::vector<long long> fvector() const;
  /// V - E in 2D (0), V - E + F in 3D (2).
  long long euler_characteristic() const;
  /// True iff every facet of a 3D cell is a triangle.
  bool simplicial() const;
};

struct ZeroCellOptions {
  /// Keep clipping this many hyperplanes after the stopping rule fires.
  int extra_hyperplanes = 0;
  long long max_hyperplanes = 10000;
  double initial_box = 1e4;
};

/// Exact sample of the zero cell of a stationary isotropic Poisson hyperplane
/// tessellation with unit intensity in direction space, d in {2, 3}.
HalfspaceCell simulate_zero_cell(int d, Rng& rng, const ZeroCellOptions& options = {});

struct PolyhedronOptions {
  /// Keep adding this many atoms after the stopping rule fires.
  int extra_atoms = 0;
  long long max_atoms = 100000;
};

/// Exact sample of conv of the Poisson process with intensity |x|^{-d-alpha},
/// d in {2, 3}. Facets are triangles in 3D; coplanar neighbours are reported
/// through HalfspaceCell::simplicial by keeping the triangulation.
HalfspaceCell simulate_poisson_polyhedron(int d, double alpha, Rng& rng,
                                          const PolyhedronOptions& options = {});

/// Convex hull of points in R^3 as outward oriented triangles. Throws
/// NumericError if the points are (numerically) coplanar.
HalfspaceCell convex_hull_3d(const std::vector<Eigen::Vector3d>& points);
/// Convex hull of points in the plane (z ignored), counterclockwise.
HalfspaceCell convex_hull_2d(const std::vector<Eigen::Vector3d>& points);

}  // namespace zerocell::montecarlo
