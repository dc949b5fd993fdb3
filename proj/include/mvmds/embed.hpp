#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvmds/manifold.hpp"
#include "mvmds/mmspace.hpp"
#include "mvmds/srgw.hpp"

namespace mvmds {

// How the optimizer picks its starting radius.
enum class ScaleInit {
  kAuto,      // kDiameter when learning the scale, otherwise kManifold
  kManifold,  // the radius given with the manifold
  kDiameter,  // diam(X) / pi, so the target's diameter matches the data's
};

struct EmbeddingProblem {
  MetricMeasureSpace space;
  Manifold manifold;
  bool learn_scale = false;
  int grid_count = 100;
  double jitter = kDefaultJitter;
  std::uint64_t seed = 0;
  ScaleInit scale_init = ScaleInit::kAuto;
  SolverConfig solver{};
  unsigned threads = 1;
};

struct OptimizerConfig {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int max_steps = 10000;
  double rel_threshold = 1e-3;
  // Convergence compares the best stress now with the best `patience` steps
  // ago, so a single oscillating step does not end the run.
  int patience = 20;

  void validate() const;
};

struct EmbeddingResult {
  std::vector<ManifoldPoint> points;
  double scale = 1.0;       // learned or fixed radius
  double stress = 0.0;      // half-sum over ordered pairs
  double dis2 = 0.0;        // 2-distortion of the induced Monge coupling
  std::vector<double> trace;
  std::optional<std::vector<double>> circular_coords;
  int steps = 0;
  int lr_halvings = 0;
  std::optional<double> warm_start_dis2;      // srgw_gd only
  std::optional<std::vector<Index>> warm_start_map;
  std::optional<std::string> failure;         // random_init_gd trials only
};

// 1/2 sum_{i,j} (dX(i,j) - dY(y_i, y_j))^2
double stress(const std::vector<ManifoldPoint>& points, const Manifold& manifold,
              const Matrix& dx);

// dis_2 of the coupling induced by i -> points[i] under `weights`. Equals
// sqrt(stress / 2) / n for uniform weights.
double embedding_dis2(const std::vector<ManifoldPoint>& points,
                      const Manifold& manifold, const Matrix& dx,
                      const Vector& weights);

struct StressGradient {
  std::vector<Vector> tangents;
  double scale = 0.0;  // d stress / d log(radius); zero unless learn_scale
};

StressGradient stress_gradient(const std::vector<ManifoldPoint>& points,
                               const Manifold& manifold, const Matrix& dx,
                               bool learn_scale);

// Starting radius for the problem according to its ScaleInit.
double initial_scale(const EmbeddingProblem& problem);

// Adam on the stress in chart coordinates with a retraction after every step.
// Stops when the relative stress change drops below cfg.rel_threshold. If the
// stress exceeds ten times the best seen, the best state is restored and the
// learning rate halved. Returns the best state seen.
// Throws NumericalError (carrying the trace) if the stress becomes non-finite.
EmbeddingResult optimize(const EmbeddingProblem& problem,
                         std::vector<ManifoldPoint> init_points, double init_scale,
                         const OptimizerConfig& cfg);

// srGW(p=2) onto a jittered grid, Monge rounding, then optimize().
EmbeddingResult srgw_gd(const EmbeddingProblem& problem, const OptimizerConfig& cfg);

// `trials` optimizations from independent uniform random starts. Divergent
// trials are returned with `failure` set and infinite dis2.
std::vector<EmbeddingResult> random_init_gd(const EmbeddingProblem& problem, int trials,
                                            const OptimizerConfig& cfg);

struct TrialRange {
  double min = 0.0;
  double max = 0.0;
  int converged = 0;
};

// Min and max dis2 over trials that did not fail.
TrialRange summarize_trials(const std::vector<EmbeddingResult>& trials);

// Angle / 2pi in [0, 1). Throws DomainError for non-circle manifolds.
double circular_coordinate(const Manifold& manifold, const ManifoldPoint& point);

}  // namespace mvmds
