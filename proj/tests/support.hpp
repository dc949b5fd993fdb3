#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "mvmds/rng.hpp"
#include "mvmds/types.hpp"

namespace mvmds::testing {

// Euclidean distances between random points in the unit square.
inline Matrix random_metric(Index n, Rng& rng) {
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      d(i, j) = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  return d;
}

inline Vector random_weights(Index n, Rng& rng) {
  Vector w(n);
  for (Index i = 0; i < n; ++i) w(i) = 0.1 + rng.uniform();
  return w / w.sum();
}

inline Matrix random_plan(const Vector& w, Index m, Rng& rng) {
  Matrix plan(w.size(), m);
  for (Index i = 0; i < w.size(); ++i) {
    for (Index j = 0; j < m; ++j) plan(i, j) = rng.uniform();
    plan.row(i) *= w(i) / plan.row(i).sum();
  }
  return plan;
}

inline Matrix two_point(double d) {
  Matrix m(2, 2);
  m << 0, d, d, 0;
  return m;
}

// sum_{i,j,k,l} |dx(i,k) - dy(j,l)|^p plan(i,j) plan(k,l), by explicit loops.
inline double naive_sum(const Matrix& plan, const Matrix& dx, const Matrix& dy, double p) {
  double acc = 0.0;
  for (Index i = 0; i < dx.rows(); ++i)
    for (Index j = 0; j < dy.rows(); ++j)
      for (Index k = 0; k < dx.rows(); ++k)
        for (Index l = 0; l < dy.rows(); ++l)
          acc += std::pow(std::abs(dx(i, k) - dy(j, l)), p) * plan(i, j) * plan(k, l);
  return acc;
}

inline double naive_dis(const Matrix& plan, const Matrix& dx, const Matrix& dy, double p) {
  return 0.5 * std::pow(naive_sum(plan, dx, dy, p), 1.0 / p);
}

}  // namespace mvmds::testing
