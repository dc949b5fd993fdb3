#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvmds/mmspace.hpp"

namespace mvmds {

// Two-district plan: one label in {1, 2} per unit.
using Plan = std::vector<int>;

struct Ensemble {
  std::vector<Plan> plans;
  std::vector<std::string> unit_ids;
  std::vector<std::string> plan_ids;

  std::size_t plan_count() const { return plans.size(); }
  std::size_t unit_count() const { return unit_ids.size(); }

  // Throws StructuralError unless every plan has one label in {1,2} per unit
  // and uses both labels.
  void validate() const;
};

// Units whose labels differ, minimized over the 1<->2 relabeling of b.
int hamming(const Plan& a, const Plan& b);

Plan swap_labels(const Plan& plan);

// Pairwise hamming distances with uniform weights.
MetricMeasureSpace ensemble_distances(const Ensemble& ensemble, unsigned threads = 1);

// q or its relabeling, whichever disagrees with p on fewer units; ties keep q.
Plan align(const Plan& q, const Plan& p);

enum class WithinArcAlignment {
  kArcFirstPlan,       // align other plans in an arc to that arc's first plan
  kEnsembleFirstPlan,  // align them to the first plan of arc 0
};

struct ArcSummary {
  int arc_index = 0;
  std::vector<std::size_t> plan_indices;  // sorted by coordinate, then index
  std::optional<std::size_t> first_plan;
  // Share of arc plans assigning each unit to District 1; absent for an empty arc.
  std::optional<std::vector<double>> fractions;
};

// Splits [0,1) into n_arcs equal arcs starting at 0, chains the arcs' first
// plans by alignment, aligns the remaining plans, and averages District 1
// membership per unit.
std::vector<ArcSummary> arc_summaries(
    const std::vector<double>& coords, const Ensemble& ensemble, int n_arcs = 8,
    WithinArcAlignment mode = WithinArcAlignment::kArcFirstPlan);

}  // namespace mvmds
