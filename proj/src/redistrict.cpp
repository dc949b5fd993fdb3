#include "mvmds/redistrict.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvmds/errors.hpp"
#include "mvmds/parallel.hpp"

namespace mvmds {

void Ensemble::validate() const {
  if (plans.empty()) throw StructuralError("ensemble has no plans");
  if (!plan_ids.empty() && plan_ids.size() != plans.size()) {
    throw StructuralError("plan id count does not match plan count");
  }
  for (std::size_t p = 0; p < plans.size(); ++p) {
    const Plan& plan = plans[p];
    if (plan.size() != unit_ids.size()) {
      throw StructuralError("plan " + std::to_string(p) + " has " +
                            std::to_string(plan.size()) + " labels, expected " +
                            std::to_string(unit_ids.size()));
    }
    bool seen[3] = {false, false, false};
    for (int label : plan) {
      if (label != 1 && label != 2) {
        throw StructuralError("plan " + std::to_string(p) + " has label " +
                              std::to_string(label) + " outside {1,2}");
      }
      seen[label] = true;
    }
    if (!seen[1] || !seen[2]) {
      throw StructuralError("plan " + std::to_string(p) + " leaves a district empty");
    }
  }
}

int hamming(const Plan& a, const Plan& b) {
  if (a.size() != b.size()) throw StructuralError("plans have different lengths");
  int differ = 0;
  for (std::size_t u = 0; u < a.size(); ++u) differ += a[u] != b[u] ? 1 : 0;
  return std::min(differ, static_cast<int>(a.size()) - differ);
}

Plan swap_labels(const Plan& plan) {
  Plan out(plan.size());
  std::transform(plan.begin(), plan.end(), out.begin(), [](int l) { return 3 - l; });
  return out;
}

MetricMeasureSpace ensemble_distances(const Ensemble& ensemble, unsigned threads) {
  ensemble.validate();
  const Index n = static_cast<Index>(ensemble.plan_count());
  Matrix d = Matrix::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
    const Index i = static_cast<Index>(row);
    for (Index j = i + 1; j < n; ++j) {
      d(i, j) = hamming(ensemble.plans[i], ensemble.plans[j]);
    }
  });
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < i; ++j) d(i, j) = d(j, i);
  return MetricMeasureSpace(std::move(d), std::nullopt, ensemble.plan_ids);
}

Plan align(const Plan& q, const Plan& p) {
  if (q.size() != p.size()) throw StructuralError("plans have different lengths");
  std::size_t differ = 0;
  for (std::size_t u = 0; u < q.size(); ++u) differ += q[u] != p[u] ? 1 : 0;
  return 2 * differ > q.size() ? swap_labels(q) : q;
}

std::vector<ArcSummary> arc_summaries(const std::vector<double>& coords,
                                      const Ensemble& ensemble, int n_arcs,
                                      WithinArcAlignment mode) {
  if (n_arcs < 1) throw DomainError("need at least one arc");
  if (coords.size() != ensemble.plan_count()) {
    throw StructuralError("one circular coordinate per plan required");
  }
  std::vector<ArcSummary> arcs(n_arcs);
  for (int a = 0; a < n_arcs; ++a) arcs[a].arc_index = a;
  for (std::size_t p = 0; p < coords.size(); ++p) {
    const double c = coords[p];
    if (!(c >= 0.0 && c < 1.0)) throw DomainError("circular coordinate outside [0,1)");
    const int arc = std::min(n_arcs - 1, static_cast<int>(std::floor(c * n_arcs)));
    arcs[arc].plan_indices.push_back(p);
  }
  for (auto& arc : arcs) {
    std::stable_sort(arc.plan_indices.begin(), arc.plan_indices.end(),
                     [&](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });
  }

  std::vector<Plan> labelled(ensemble.plan_count());
  std::optional<std::size_t> previous_first;
  std::optional<std::size_t> ensemble_first;
  for (auto& arc : arcs) {
    if (arc.plan_indices.empty()) continue;
    const std::size_t first = arc.plan_indices.front();
    arc.first_plan = first;
    labelled[first] = previous_first
                          ? align(ensemble.plans[first], labelled[*previous_first])
                          : ensemble.plans[first];
    if (!ensemble_first) ensemble_first = first;
    const std::size_t anchor =
        mode == WithinArcAlignment::kArcFirstPlan ? first : *ensemble_first;
    for (std::size_t k = 1; k < arc.plan_indices.size(); ++k) {
      const std::size_t p = arc.plan_indices[k];
      labelled[p] = align(ensemble.plans[p], labelled[anchor]);
    }
    previous_first = first;

    const std::size_t units = ensemble.unit_count();
    std::vector<double> fractions(units, 0.0);
    for (std::size_t p : arc.plan_indices) {
      for (std::size_t u = 0; u < units; ++u) fractions[u] += labelled[p][u] == 1 ? 1.0 : 0.0;
    }
    const double count = static_cast<double>(arc.plan_indices.size());
    for (double& f : fractions) f /= count;
    arc.fractions = std::move(fractions);
  }
  return arcs;
}

}  // namespace mvmds
