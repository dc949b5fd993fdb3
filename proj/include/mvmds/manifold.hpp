#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mvmds/rng.hpp"
#include "mvmds/types.hpp"

namespace mvmds {

enum class ManifoldType { kCircle, kSphere, kEuclidean };

// Point representation: circle -> [angle in [0, 2pi)], sphere -> unit
// 3-vector (radius lives on the manifold), euclidean -> coordinates.
using ManifoldPoint = Vector;

struct DistanceGradient {
  Vector tangent;         // d/dp of d(p, q), in the point's coordinates
  double scale = 0.0;     // d/d(log radius); zero for euclidean targets
};

// Target geometry for embeddings. Circle and sphere distances scale with the
// radius; euclidean distances are plain norms and `extent` only sizes grids
// and random draws (the cube [-extent, extent]^dim).
class Manifold {
 public:
  static Manifold circle(double radius);
  static Manifold sphere(double radius);
  static Manifold euclidean(int dim, double extent = 1.0);

  // Parses `circle:r=1.0`, `sphere:r=6371`, `euclidean:d=2[,r=extent]`.
  static Manifold parse(std::string_view spec);
  std::string to_string() const;

  ManifoldType type() const { return type_; }
  double radius() const { return radius_; }
  int dim() const { return dim_; }
  bool has_scale() const { return type_ != ManifoldType::kEuclidean; }
  Manifold with_radius(double radius) const;

  // Number of stored coordinates per point (1, 3, or dim).
  int coordinate_count() const;
  // Throws StructuralError if `p` is not a valid point representation.
  void check_point(const ManifoldPoint& p) const;

  double distance(const ManifoldPoint& p, const ManifoldPoint& q) const;
  // Gradient of d(p, q) with respect to p. Coincident points and cut-locus
  // pairs (within 1e-9) get the zero subgradient.
  DistanceGradient distance_gradient(const ManifoldPoint& p,
                                     const ManifoldPoint& q) const;
  // Removes the normal component for the sphere; identity otherwise.
  Vector project_tangent(const ManifoldPoint& p, const Vector& v) const;
  // Throws NumericalError if a sphere step lands on the origin.
  ManifoldPoint retract(const ManifoldPoint& p, const Vector& step) const;

  // Circle: equispaced angles. Sphere: Fibonacci lattice with `count` points.
  // Euclidean: k^dim cell-centred lattice with k = ceil(count^(1/dim)).
  // Each point is then perturbed uniformly by up to jitter x nominal spacing.
  std::vector<ManifoldPoint> grid(int count, double jitter, std::uint64_t seed) const;
  // Nominal spacing of grid(count, ...) in chart units.
  double grid_spacing(int count) const;

  ManifoldPoint random_point(Rng& rng) const;

  Matrix pairwise_distances(const std::vector<ManifoldPoint>& points,
                            unsigned threads = 1) const;

 private:
  Manifold(ManifoldType type, double radius, int dim);

  ManifoldType type_;
  double radius_;
  int dim_;
};

inline constexpr double kCutLocusTolerance = 1e-9;
inline constexpr double kDefaultJitter = 0.1;

}  // namespace mvmds
