#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvmds/types.hpp"

namespace mvmds {

struct MatrixEntry {
  Index row = 0;
  Index col = 0;
};

// Worst triangle defect d(i,k) - d(i,j) - d(j,k), located at (i, k) through j.
struct TriangleDefect {
  double value = 0.0;
  Index i = 0;
  Index k = 0;
  Index via = 0;
};

struct MetricValidation {
  std::vector<MatrixEntry> asymmetric;    // upper-triangle entries (i < j)
  std::vector<Index> nonzero_diagonal;
  std::vector<MatrixEntry> negative;
  std::optional<TriangleDefect> triangle;  // set only when requested

  // Symmetric, zero diagonal, nonnegative. Triangle defects are reported
  // but never make a matrix structurally invalid.
  bool structurally_valid() const {
    return asymmetric.empty() && nonzero_diagonal.empty() && negative.empty();
  }
  bool satisfies_triangle(double tol = 0.0) const {
    return !triangle || triangle->value <= tol;
  }
  std::string summary() const;
};

// Throws StructuralError for non-square input. `tol` is the absolute
// tolerance for the symmetry, diagonal and sign checks.
MetricValidation validate_metric(const Matrix& d, bool check_triangle,
                                 double tol = 0.0);

// Finite metric-measure space: square distance matrix plus fully supported
// probability weights. Immutable after construction.
class MetricMeasureSpace {
 public:
  // Weights default to uniform. Throws StructuralError when the distances are
  // not symmetric/zero-diagonal/nonnegative or the weights are not a strictly
  // positive probability vector.
  explicit MetricMeasureSpace(Matrix distances,
                              std::optional<Vector> weights = std::nullopt,
                              std::vector<std::string> labels = {});

  static MetricMeasureSpace uniform(Matrix distances) {
    return MetricMeasureSpace(std::move(distances));
  }

  Index size() const { return distances_.rows(); }
  const Matrix& distances() const { return distances_; }
  const Vector& weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool is_uniform() const;

 private:
  Matrix distances_;
  Vector weights_;
  std::vector<std::string> labels_;
};

inline constexpr double kWeightSumTolerance = 1e-12;

// diam_p(X) = (sum_{i,k} d(i,k)^p w_i w_k)^(1/p); p = infinity gives the
// diameter of the support. Throws DomainError for p < 1.
double p_diameter(const MetricMeasureSpace& x, double p);

}  // namespace mvmds
