#include "mvmds/mmspace.hpp"

#include <cmath>
#include <sstream>

#include "mvmds/errors.hpp"

namespace mvmds {

std::string MetricValidation::summary() const {
  std::ostringstream out;
  if (structurally_valid() && satisfies_triangle()) return "valid";
  bool first = true;
  auto sep = [&] {
    if (!first) out << "; ";
    first = false;
  };
  if (!asymmetric.empty()) {
    sep();
    out << asymmetric.size() << " symmetry violation(s), first at ("
        << asymmetric.front().row << "," << asymmetric.front().col << ")";
  }
  if (!nonzero_diagonal.empty()) {
    sep();
    out << nonzero_diagonal.size() << " nonzero diagonal entr(ies), first at "
        << nonzero_diagonal.front();
  }
  if (!negative.empty()) {
    sep();
    out << negative.size() << " negative entr(ies), first at ("
        << negative.front().row << "," << negative.front().col << ")";
  }
  if (!satisfies_triangle()) {
    sep();
    out << "triangle defect " << triangle->value << " at (" << triangle->i
        << "," << triangle->k << ") via " << triangle->via;
  }
  return out.str();
}

MetricValidation validate_metric(const Matrix& d, bool check_triangle,
                                 double tol) {
  if (d.rows() != d.cols()) {
    throw StructuralError("distance matrix must be square, got " +
                          std::to_string(d.rows()) + "x" +
                          std::to_string(d.cols()));
  }
  MetricValidation report;
  const Index n = d.rows();
  for (Index i = 0; i < n; ++i) {
    if (!(std::abs(d(i, i)) <= tol)) report.nonzero_diagonal.push_back(i);
    for (Index j = 0; j < n; ++j) {
      if (!(d(i, j) >= -tol)) report.negative.push_back({i, j});
      if (i < j && !(std::abs(d(i, j) - d(j, i)) <= tol)) {
        report.asymmetric.push_back({i, j});
      }
    }
  }
  if (check_triangle) {
    TriangleDefect worst{-kInfinity, 0, 0, 0};
    for (Index i = 0; i < n; ++i) {
      for (Index k = 0; k < n; ++k) {
        for (Index j = 0; j < n; ++j) {
          const double defect = d(i, k) - d(i, j) - d(j, k);
          if (defect > worst.value) worst = {defect, i, k, j};
        }
      }
    }
    if (n == 0) worst.value = 0.0;
    report.triangle = worst;
  }
  return report;
}

MetricMeasureSpace::MetricMeasureSpace(Matrix distances,
                                       std::optional<Vector> weights,
                                       std::vector<std::string> labels)
    : distances_(std::move(distances)), labels_(std::move(labels)) {
  const MetricValidation report = validate_metric(distances_, false);
  if (!report.structurally_valid()) {
    throw StructuralError("invalid distance matrix: " + report.summary());
  }
  const Index n = distances_.rows();
  if (n == 0) throw StructuralError("metric-measure space must be nonempty");
  if (weights) {
    if (weights->size() != n) {
      throw StructuralError("weights length " +
                            std::to_string(weights->size()) +
                            " does not match " + std::to_string(n) + " points");
    }
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double w = (*weights)(i);
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw StructuralError("weight " + std::to_string(i) +
                              " is not strictly positive");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "weights sum to " << total << ", expected 1";
      throw StructuralError(msg.str());
    }
    weights_ = std::move(*weights);
  } else {
    weights_ = Vector::Constant(n, 1.0 / static_cast<double>(n));
  }
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != n) {
    throw StructuralError("label count does not match point count");
  }
}

bool MetricMeasureSpace::is_uniform() const {
  const double w0 = weights_(0);
  for (Index i = 1; i < weights_.size(); ++i) {
    if (weights_(i) != w0) return false;
  }
  return true;
}

double p_diameter(const MetricMeasureSpace& x, double p) {
  if (!(p >= 1.0)) throw DomainError("p-diameter requires p >= 1");
  const Matrix& d = x.distances();
  const Vector& w = x.weights();
  const Index n = x.size();
  if (std::isinf(p)) {
    double diam = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) diam = std::max(diam, d(i, k));
    return diam;
  }
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      total += std::pow(d(i, k), p) * w(i) * w(k);
    }
  }
  return std::pow(total, 1.0 / p);
}

}  // namespace mvmds
