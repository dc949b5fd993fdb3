#pragma once

#include <cstdint>
#include <vector>

#include "mvmds/manifold.hpp"
#include "mvmds/mmspace.hpp"
#include "mvmds/redistrict.hpp"

namespace mvmds {

// Planar point pattern rendered as a sum of isotropic Gaussian blobs. The
// distance between two rotated copies is the L2 norm of the difference of the
// rendered images (up to a constant factor), which depends only on the angle
// between the copies.
struct PointPattern {
  std::vector<Eigen::Vector2d> anchors;
  double blur = 0.25;
};

// `symmetry` = 2 adds the point reflection of every anchor, giving a pattern
// invariant under rotation by pi.
PointPattern random_pattern(int n_anchor, std::uint64_t seed, int symmetry = 1,
                            double blur = 0.25);

double rotated_copy_distance(const PointPattern& pattern, double angle_a, double angle_b);

struct RotatedPatternData {
  MetricMeasureSpace space;
  std::vector<double> angles;  // radians in [0, 2pi)
  PointPattern pattern;
};

// Synthetic rotated-image dataset: n_samples copies of a seeded pattern at
// uniform random angles, with uniform weights.
RotatedPatternData rotated_pattern(int n_anchor, int n_samples, std::uint64_t seed,
                                   int symmetry = 1);

Matrix rotated_pattern_distances(const PointPattern& pattern,
                                 const std::vector<double>& angles);

struct ManifoldSample {
  std::vector<ManifoldPoint> points;
  MetricMeasureSpace space;
};

// Uniform random points on `manifold` and their geodesic distances, with
// optional additive Gaussian noise (symmetric, floored at zero).
ManifoldSample sample_manifold(const Manifold& manifold, int n, double noise_sd,
                               std::uint64_t seed);

struct GeoPoint {
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180)

  void validate() const;
};

inline constexpr double kWgs84SemiMajorKm = 6378.137;
inline constexpr double kWgs84Flattening = 1.0 / 298.257223563;
inline constexpr double kMeanEarthRadiusKm = 6371.0;
inline constexpr int kVincentyMaxIterations = 200;

struct GeodesicDistance {
  double km = 0.0;
  bool spherical_fallback = false;  // iteration failed to converge
};

// Inverse geodesic problem on the WGS-84 ellipsoid (Vincenty). Near-antipodal
// pairs where the iteration does not converge fall back to the great-circle
// distance on a sphere of radius 6371 km.
GeodesicDistance wgs84_geodesic(const GeoPoint& a, const GeoPoint& b);

double spherical_distance_km(const GeoPoint& a, const GeoPoint& b,
                             double radius_km = kMeanEarthRadiusKm);

// Uniform random locations on the globe.
std::vector<GeoPoint> random_cities(int n, std::uint64_t seed);

Matrix geodesic_matrix(const std::vector<GeoPoint>& points);

// Two-district plans on a side x side grid of units, each split by a line
// through the centre at a random orientation plus a small offset.
Ensemble synthetic_ensemble(int side, int n_plans, std::uint64_t seed);

}  // namespace mvmds
