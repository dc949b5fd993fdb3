#include "mvmds/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mvmds/errors.hpp"

namespace mvmds {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegree = kPi / 180.0;

}  // namespace

PointPattern random_pattern(int n_anchor, std::uint64_t seed, int symmetry, double blur) {
  if (n_anchor < 2) throw DomainError("pattern needs at least two anchors");
  if (symmetry != 1 && symmetry != 2) throw DomainError("symmetry must be 1 or 2");
  if (!(blur > 0.0)) throw DomainError("blur must be positive");
  Rng rng(seed);
  PointPattern pattern;
  pattern.blur = blur;
  const int base = symmetry == 2 ? (n_anchor + 1) / 2 : n_anchor;
  for (int a = 0; a < base; ++a) {
    const double r = std::sqrt(rng.uniform());
    const double phi = 2.0 * kPi * rng.uniform();
    pattern.anchors.emplace_back(r * std::cos(phi), r * std::sin(phi));
  }
  if (symmetry == 2) {
    for (int a = 0; a < base; ++a) pattern.anchors.push_back(-pattern.anchors[a]);
  }
  return pattern;
}

double rotated_copy_distance(const PointPattern& pattern, double angle_a, double angle_b) {
  // ||f_a - f_b||^2 is proportional to
  //   sum_{a,b} exp(-|pa - pb|^2 / 4s^2) - exp(-|pa - R pb|^2 / 4s^2)
  // with R the relative rotation. Each term is rewritten through expm1 of the
  // exponent gap 2 pa.(pb - R pb), which is exact at zero angle.
  const double delta = angle_b - angle_a;
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  const double scale = 1.0 / (4.0 * pattern.blur * pattern.blur);
  double total = 0.0;
  for (const auto& pa : pattern.anchors) {
    for (const auto& pb : pattern.anchors) {
      const Eigen::Vector2d rotated(c * pb.x() - s * pb.y(), s * pb.x() + c * pb.y());
      const double base = (pa - pb).squaredNorm() * scale;
      const double gap = 2.0 * pa.dot(pb - rotated) * scale;
      total += -std::exp(-base) * std::expm1(-gap);
    }
  }
  return std::sqrt(2.0 * std::max(total, 0.0));
}

Matrix rotated_pattern_distances(const PointPattern& pattern,
                                 const std::vector<double>& angles) {
  const Index n = static_cast<Index>(angles.size());
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      d(i, j) = rotated_copy_distance(pattern, angles[i], angles[j]);
      d(j, i) = d(i, j);
    }
  }
  return d;
}

RotatedPatternData rotated_pattern(int n_anchor, int n_samples, std::uint64_t seed,
                                   int symmetry) {
  if (n_samples < 2) throw DomainError("need at least two samples");
  PointPattern pattern = random_pattern(n_anchor, seed, symmetry);
  Rng rng(seed ^ 0xA5A5A5A5DEADBEEFull);
  std::vector<double> angles(n_samples);
  for (double& a : angles) a = 2.0 * kPi * rng.uniform();
  Matrix d = rotated_pattern_distances(pattern, angles);
  return {MetricMeasureSpace(std::move(d)), std::move(angles), std::move(pattern)};
}

ManifoldSample sample_manifold(const Manifold& manifold, int n, double noise_sd,
                               std::uint64_t seed) {
  if (n < 1) throw DomainError("need at least one sample");
  if (!(noise_sd >= 0.0)) throw DomainError("noise_sd must be >= 0");
  Rng rng(seed);
  std::vector<ManifoldPoint> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) points.push_back(manifold.random_point(rng));
  Matrix d = manifold.pairwise_distances(points);
  if (noise_sd > 0.0) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        d(i, j) = std::max(0.0, d(i, j) + noise_sd * rng.normal());
        d(j, i) = d(i, j);
      }
    }
  }
  return {std::move(points), MetricMeasureSpace(std::move(d))};
}

void GeoPoint::validate() const {
  if (!(latitude >= -90.0 && latitude <= 90.0)) {
    throw StructuralError("latitude outside [-90, 90]");
  }
  if (!(longitude >= -180.0 && longitude < 180.0)) {
    throw StructuralError("longitude outside [-180, 180)");
  }
}

GeodesicDistance wgs84_geodesic(const GeoPoint& a, const GeoPoint& b) {
  a.validate();
  b.validate();
  if (a.latitude == b.latitude && a.longitude == b.longitude) return {0.0, false};

  const double f = kWgs84Flattening;
  const double major = kWgs84SemiMajorKm;
  const double minor = major * (1.0 - f);
  const double u1 = std::atan((1.0 - f) * std::tan(a.latitude * kDegree));
  const double u2 = std::atan((1.0 - f) * std::tan(b.latitude * kDegree));
  const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
  const double sin_u2 = std::sin(u2), cos_u2 = std::cos(u2);
  const double longitude_gap = std::remainder((b.longitude - a.longitude) * kDegree, 2.0 * kPi);

  double lambda = longitude_gap;
  double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
  double cos2_alpha = 0.0, cos_2sigma_m = 0.0;
  bool converged = false;
  for (int iter = 0; iter < kVincentyMaxIterations; ++iter) {
    const double sin_lambda = std::sin(lambda);
    const double cos_lambda = std::cos(lambda);
    const double t1 = cos_u2 * sin_lambda;
    const double t2 = cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lambda;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    if (sin_sigma == 0.0) return {0.0, false};  // coincident after reduction
    cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cos_u1 * cos_u2 * sin_lambda / sin_sigma;
    cos2_alpha = 1.0 - sin_alpha * sin_alpha;
    // equatorial lines have cos^2(alpha) = 0
    cos_2sigma_m = cos2_alpha != 0.0 ? cos_sigma - 2.0 * sin_u1 * sin_u2 / cos2_alpha : 0.0;
    const double c = f / 16.0 * cos2_alpha * (4.0 + f * (4.0 - 3.0 * cos2_alpha));
    const double previous = lambda;
    lambda = longitude_gap +
             (1.0 - c) * f * sin_alpha *
                 (sigma + c * sin_sigma *
                              (cos_2sigma_m + c * cos_sigma *
                                                  (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::abs(lambda - previous) < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged || std::abs(lambda) > kPi) {
    return {spherical_distance_km(a, b), true};
  }
  const double u_sq = cos2_alpha * (major * major - minor * minor) / (minor * minor);
  const double big_a =
      1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double delta_sigma =
      big_b * sin_sigma *
      (cos_2sigma_m +
       big_b / 4.0 *
           (cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m) -
            big_b / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                (-3.0 + 4.0 * cos_2sigma_m * cos_2sigma_m)));
  return {minor * big_a * (sigma - delta_sigma), false};
}

double spherical_distance_km(const GeoPoint& a, const GeoPoint& b, double radius_km) {
  const double phi1 = a.latitude * kDegree;
  const double phi2 = b.latitude * kDegree;
  const double dphi = phi2 - phi1;
  const double dlambda = (b.longitude - a.longitude) * kDegree;
  const double h = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
  return 2.0 * radius_km * std::asin(std::min(1.0, std::sqrt(h)));
}

std::vector<GeoPoint> random_cities(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("need at least one city");
  Rng rng(seed);
  std::vector<GeoPoint> cities(n);
  for (auto& c : cities) {
    c.latitude = std::asin(rng.uniform(-1.0, 1.0)) / kDegree;
    c.longitude = rng.uniform(-180.0, 180.0);
  }
  return cities;
}

Matrix geodesic_matrix(const std::vector<GeoPoint>& points) {
  const Index n = static_cast<Index>(points.size());
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      d(i, j) = wgs84_geodesic(points[i], points[j]).km;
      d(j, i) = d(i, j);
    }
  }
  return d;
}

Ensemble synthetic_ensemble(int side, int n_plans, std::uint64_t seed) {
  if (side < 2) throw DomainError("grid side must be >= 2");
  if (n_plans < 1) throw DomainError("need at least one plan");
  Rng rng(seed);
  Ensemble ensemble;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      ensemble.unit_ids.push_back("u" + std::to_string(r) + "_" + std::to_string(c));
  const double centre = 0.5 * (side - 1);
  for (int p = 0; p < n_plans; ++p) {
    const double phi = kPi * rng.uniform();
    const double offset = rng.uniform(-0.15, 0.15) * side;
    Plan plan(static_cast<std::size_t>(side * side));
    int ones = 0;
    for (int r = 0; r < side; ++r) {
      for (int c = 0; c < side; ++c) {
        const double proj = (c - centre) * std::cos(phi) + (r - centre) * std::sin(phi);
        const int label = proj + offset > 0.0 ? 1 : 2;
        plan[static_cast<std::size_t>(r * side + c)] = label;
        ones += label == 1;
      }
    }
    // keep both districts nonempty
    if (ones == 0) plan.front() = 1;
    if (ones == side * side) plan.front() = 2;
    ensemble.plans.push_back(std::move(plan));
    ensemble.plan_ids.push_back("plan" + std::to_string(p));
  }
  return ensemble;
}

}  // namespace mvmds
