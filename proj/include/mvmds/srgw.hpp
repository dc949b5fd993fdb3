#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvmds/mmspace.hpp"
#include "mvmds/rng.hpp"
#include "mvmds/types.hpp"

namespace mvmds {

inline constexpr double kMarginalTolerance = 1e-10;

// Nonnegative n x m plan whose row sums equal the source weights. Only the
// source marginal is constrained; column sums are free.
class SemiCoupling {
 public:
  // Throws StructuralError on negative entries, shape mismatch, or row sums
  // off by more than kMarginalTolerance.
  SemiCoupling(Matrix plan, Vector source_weights);

  // weights (x) uniform(m)
  static SemiCoupling product(const Vector& weights, Index m);
  static SemiCoupling product(const Vector& weights, const Vector& target);
  // Coupling induced by a map: all of row i's mass sits in column f[i].
  static SemiCoupling from_map(const Vector& weights,
                               const std::vector<Index>& f, Index m);
  // Each row is a random (roughly half sparse) distribution scaled to its
  // weight.
  static SemiCoupling random(const Vector& weights, Index m, Rng& rng);

  const Matrix& plan() const { return plan_; }
  const Vector& source_weights() const { return weights_; }
  Index rows() const { return plan_.rows(); }
  Index cols() const { return plan_.cols(); }
  Vector target_marginal() const { return plan_.colwise().sum().transpose(); }

  // 1e-12 times the largest plan entry.
  double default_support_threshold() const;

 private:
  Matrix plan_;
  Vector weights_;
};

enum class SolverInit { kProduct, kRandom };

struct SolverConfig {
  int max_iterations = 1000;
  double rel_tolerance = 1e-9;
  SolverInit init = SolverInit::kProduct;
  std::uint64_t seed = 0;  // used by SolverInit::kRandom
  // Absolute support threshold; unset means 1e-12 x (max plan entry).
  std::optional<double> support_threshold;
  // Extra Monge starts after the conditional-gradient run: a pair of far-apart
  // source points is pinned to the target pairs whose distance matches best,
  // the rest is filled in greedily, then polished by monge_round. 0 disables.
  int seeded_starts = 8;

  void validate() const;
};

struct SolverResult {
  SemiCoupling coupling;
  std::vector<double> objective_trace;  // quadratic objective per iterate
  double distortion = 0.0;              // dis_2 of `coupling`
  double unrounded_distortion = 0.0;    // dis_2 of the conditional-gradient iterate
  std::optional<std::vector<Index>> monge_map;
  int iterations = 0;
  std::optional<int> seeded_start;  // set when a seeded start beat the iterate
};

// dis_p = 1/2 (sum |dX(i,k) - dY(j,l)|^p g(i,j) g(k,l))^(1/p), p in [1, inf).
double distortion_p(const SemiCoupling& coupling, const Matrix& dx,
                    const Matrix& dy, double p);

// 1/2 max over pairs of support cells of |dX(i,k) - dY(j,l)|. Support means
// entries strictly above `support_threshold` (default relative 1e-12).
double distortion_inf(const SemiCoupling& coupling, const Matrix& dx,
                      const Matrix& dy,
                      std::optional<double> support_threshold = std::nullopt);

struct ObjectiveGradient {
  double value = 0.0;
  Matrix gradient;
};

// E(plan) = sum (dX(i,k) - dY(j,l))^2 plan(i,j) plan(k,l) and its gradient,
// evaluated in O(n^2 m + n m^2). Row and column marginals are taken from the
// plan itself, so the gradient is that of E on the full matrix space.
ObjectiveGradient objective_and_gradient(const Matrix& plan, const Matrix& dx,
                                         const Matrix& dy);

// Vertex of the semi-coupling polytope minimizing <g, plan>: each row's mass
// goes to its argmin column, ties to the lowest column.
SemiCoupling lmo(const Matrix& g, const Vector& weights);

// Minimizer over [0,1] of E(current + t (vertex - current)).
double exact_line_search(const SemiCoupling& current, const SemiCoupling& vertex,
                         const Matrix& dx, const Matrix& dy);

// Conditional-gradient (Frank-Wolfe) solver for srGW at p = 2, followed by
// Monge rounding.
SolverResult solve_srgw2(const MetricMeasureSpace& x, const Matrix& dy,
                         const SolverConfig& cfg = {});

struct MongeRounding {
  std::vector<Index> map;
  SemiCoupling coupling;
  int passes = 0;
};

inline constexpr int kMaxRoundingPasses = 10;

// Replaces each row by a Dirac mass at the column minimizing that row's
// contribution to the distortion, in row order, repeating until no row
// changes or kMaxRoundingPasses passes. Never increases dis_p. p may be
// infinite, in which case `support_threshold` selects the support.
MongeRounding monge_round(const SemiCoupling& coupling, const Matrix& dx,
                          const Matrix& dy, double p,
                          std::optional<double> support_threshold = std::nullopt);

bool is_monge(const SemiCoupling& coupling,
              std::optional<double> support_threshold = std::nullopt);

}  // namespace mvmds
