#include "mvmds/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mvmds/errors.hpp"
#include "mvmds/parallel.hpp"

namespace mvmds {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double wrapped = std::fmod(theta, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

// Signed angular difference in [-pi, pi].
double angle_difference(double a, double b) {
  return std::remainder(a - b, kTwoPi);
}

double parse_number(std::string_view text, std::string_view spec) {
  std::string owned(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(owned, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != owned.size()) {
    throw StructuralError("bad number '" + owned + "' in manifold spec '" +
                          std::string(spec) + "'");
  }
  return value;
}

}  // namespace

Manifold::Manifold(ManifoldType type, double radius, int dim)
    : type_(type), radius_(radius), dim_(dim) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw StructuralError("manifold radius must be positive");
  }
  if (dim < 1) throw StructuralError("manifold dimension must be >= 1");
}

Manifold Manifold::circle(double radius) {
  return Manifold(ManifoldType::kCircle, radius, 1);
}

Manifold Manifold::sphere(double radius) {
  return Manifold(ManifoldType::kSphere, radius, 2);
}

Manifold Manifold::euclidean(int dim, double extent) {
  return Manifold(ManifoldType::kEuclidean, extent, dim);
}

Manifold Manifold::parse(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  double radius = 1.0;
  int dim = 0;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw StructuralError("expected key=value in manifold spec '" +
                              std::string(spec) + "'");
      }
      const std::string_view key = item.substr(0, eq);
      const double value = parse_number(item.substr(eq + 1), spec);
      if (key == "r") {
        radius = value;
      } else if (key == "d") {
        dim = static_cast<int>(value);
        if (dim != value) throw StructuralError("dimension must be an integer");
      } else {
        throw StructuralError("unknown manifold parameter '" + std::string(key) + "'");
      }
      rest = comma == std::string_view::npos ? std::string_view{}
                                             : rest.substr(comma + 1);
    }
  }
  if (kind == "circle") return circle(radius);
  if (kind == "sphere") return sphere(radius);
  if (kind == "euclidean") {
    if (dim < 1) throw StructuralError("euclidean manifold needs d=<dim>");
    return euclidean(dim, radius);
  }
  throw StructuralError("unknown manifold '" + std::string(kind) + "'");
}

std::string Manifold::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (type_) {
    case ManifoldType::kCircle:
      out << "circle:r=" << radius_;
      break;
    case ManifoldType::kSphere:
      out << "sphere:r=" << radius_;
      break;
    case ManifoldType::kEuclidean:
      out << "euclidean:d=" << dim_ << ",r=" << radius_;
      break;
  }
  return out.str();
}

Manifold Manifold::with_radius(double radius) const {
  return Manifold(type_, radius, dim_);
}

int Manifold::coordinate_count() const {
  switch (type_) {
    case ManifoldType::kCircle:
      return 1;
    case ManifoldType::kSphere:
      return 3;
    case ManifoldType::kEuclidean:
      return dim_;
  }
  return 0;
}

void Manifold::check_point(const ManifoldPoint& p) const {
  if (p.size() != coordinate_count()) {
    throw StructuralError("point has " + std::to_string(p.size()) +
                          " coordinates, expected " +
                          std::to_string(coordinate_count()));
  }
  if (!p.allFinite()) throw StructuralError("point has non-finite coordinates");
  if (type_ == ManifoldType::kCircle && !(p(0) >= 0.0 && p(0) < kTwoPi)) {
    throw StructuralError("circle angle outside [0, 2pi)");
  }
  if (type_ == ManifoldType::kSphere && std::abs(p.norm() - 1.0) > 1e-10) {
    throw StructuralError("sphere point is not a unit vector");
  }
}

double Manifold::distance(const ManifoldPoint& p, const ManifoldPoint& q) const {
  switch (type_) {
    case ManifoldType::kCircle:
      return radius_ * std::abs(angle_difference(p(0), q(0)));
    case ManifoldType::kSphere: {
      const Eigen::Vector3d a = p.head<3>();
      const Eigen::Vector3d b = q.head<3>();
      const double dot = std::clamp(a.dot(b), -1.0, 1.0);
      return radius_ * std::atan2(a.cross(b).norm(), dot);
    }
    case ManifoldType::kEuclidean:
      return (p - q).norm();
  }
  return 0.0;
}

DistanceGradient Manifold::distance_gradient(const ManifoldPoint& p,
                                             const ManifoldPoint& q) const {
  DistanceGradient out{Vector::Zero(p.size()), 0.0};
  switch (type_) {
    case ManifoldType::kCircle: {
      const double delta = angle_difference(p(0), q(0));
      const double gap = std::abs(delta);
      if (gap < kCutLocusTolerance || std::numbers::pi - gap < kCutLocusTolerance) {
        return out;
      }
      out.tangent(0) = delta > 0.0 ? radius_ : -radius_;
      out.scale = radius_ * gap;
      return out;
    }
    case ManifoldType::kSphere: {
      const Eigen::Vector3d a = p.head<3>();
      const Eigen::Vector3d b = q.head<3>();
      const double angle = std::atan2(a.cross(b).norm(), std::clamp(a.dot(b), -1.0, 1.0));
      if (angle < kCutLocusTolerance || std::numbers::pi - angle < kCutLocusTolerance) {
        return out;
      }
      const Eigen::Vector3d normal = b - a.dot(b) * a;
      out.tangent = -radius_ * normal / std::sin(angle);
      out.scale = radius_ * angle;
      return out;
    }
    case ManifoldType::kEuclidean: {
      const Vector diff = p - q;
      const double d = diff.norm();
      if (d < kCutLocusTolerance) return out;
      out.tangent = diff / d;
      return out;
    }
  }
  return out;
}

Vector Manifold::project_tangent(const ManifoldPoint& p, const Vector& v) const {
  if (type_ != ManifoldType::kSphere) return v;
  return v - p.dot(v) * p;
}

ManifoldPoint Manifold::retract(const ManifoldPoint& p, const Vector& step) const {
  switch (type_) {
    case ManifoldType::kCircle: {
      ManifoldPoint out(1);
      out(0) = wrap_angle(p(0) + step(0));
      return out;
    }
    case ManifoldType::kSphere: {
      const Vector moved = p + step;
      const double norm = moved.norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw NumericalError("sphere retraction of a zero or non-finite vector");
      }
      return moved / norm;
    }
    case ManifoldType::kEuclidean:
      return p + step;
  }
  return p;
}

double Manifold::grid_spacing(int count) const {
  switch (type_) {
    case ManifoldType::kCircle:
      return kTwoPi / count;
    case ManifoldType::kSphere:
      return std::sqrt(4.0 * std::numbers::pi / count);
    case ManifoldType::kEuclidean: {
      int k = 1;
      while (std::pow(static_cast<double>(k), dim_) < count) ++k;
      return 2.0 * radius_ / k;
    }
  }
  return 0.0;
}

std::vector<ManifoldPoint> Manifold::grid(int count, double jitter,
                                          std::uint64_t seed) const {
  if (count < 1) throw DomainError("grid count must be >= 1");
  if (!(jitter >= 0.0 && jitter < 0.5)) throw DomainError("jitter must be in [0, 0.5)");
  Rng rng(seed);
  const double amplitude = jitter * grid_spacing(count);
  auto noise = [&] { return amplitude > 0.0 ? rng.uniform(-amplitude, amplitude) : 0.0; };
  std::vector<ManifoldPoint> points;
  switch (type_) {
    case ManifoldType::kCircle:
      for (int k = 0; k < count; ++k) {
        ManifoldPoint p(1);
        p(0) = wrap_angle(kTwoPi * k / count + noise());
        points.push_back(std::move(p));
      }
      break;
    case ManifoldType::kSphere: {
      const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
      for (int k = 0; k < count; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / count;
        const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        ManifoldPoint p(3);
        p << ring * std::cos(phi), ring * std::sin(phi), z;
        for (int c = 0; c < 3; ++c) p(c) += noise();
        points.push_back(p / p.norm());
      }
      break;
    }
    case ManifoldType::kEuclidean: {
      int k = 1;
      while (std::pow(static_cast<double>(k), dim_) < count) ++k;
      const double step = 2.0 * radius_ / k;
      std::vector<int> idx(dim_, 0);
      while (true) {
        ManifoldPoint p(dim_);
        for (int c = 0; c < dim_; ++c) p(c) = -radius_ + step * (idx[c] + 0.5) + noise();
        points.push_back(std::move(p));
        int c = dim_ - 1;
        while (c >= 0 && ++idx[c] == k) idx[c--] = 0;
        if (c < 0) break;
      }
      break;
    }
  }
  return points;
}

ManifoldPoint Manifold::random_point(Rng& rng) const {
  switch (type_) {
    case ManifoldType::kCircle: {
      ManifoldPoint p(1);
      p(0) = wrap_angle(rng.uniform() * kTwoPi);
      return p;
    }
    case ManifoldType::kSphere: {
      ManifoldPoint p(3);
      do {
        for (int c = 0; c < 3; ++c) p(c) = rng.normal();
      } while (p.norm() < 1e-12);
      return p / p.norm();
    }
    case ManifoldType::kEuclidean: {
      ManifoldPoint p(dim_);
      for (int c = 0; c < dim_; ++c) p(c) = rng.uniform(-radius_, radius_);
      return p;
    }
  }
  return {};
}

Matrix Manifold::pairwise_distances(const std::vector<ManifoldPoint>& points,
                                    unsigned threads) const {
  const Index n = static_cast<Index>(points.size());
  Matrix d = Matrix::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
    const Index i = static_cast<Index>(row);
    for (Index j = 0; j < n; ++j) {
      if (j != i) d(i, j) = distance(points[i], points[j]);
    }
  });
  // Distances are symmetric by formula; copy the upper triangle to make the
  // matrix bitwise symmetric.
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < i; ++j) d(i, j) = d(j, i);
  return d;
}

}  // namespace mvmds
