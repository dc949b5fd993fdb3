#include "mvmds/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mvmds/errors.hpp"
#include "mvmds/parallel.hpp"

namespace mvmds {
namespace {

void check_points(const std::vector<ManifoldPoint>& points, const Manifold& manifold,
                  const Matrix& dx) {
  if (static_cast<Index>(points.size()) != dx.rows() || dx.rows() != dx.cols()) {
    throw StructuralError("need one point per row of the distance matrix");
  }
  for (const auto& p : points) manifold.check_point(p);
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  // splitmix64 step keeps nearby seeds decorrelated
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void fill_outputs(EmbeddingResult& result, const EmbeddingProblem& problem,
                  const Manifold& fitted) {
  result.dis2 = embedding_dis2(result.points, fitted, problem.space.distances(),
                               problem.space.weights());
  if (fitted.type() == ManifoldType::kCircle) {
    std::vector<double> coords;
    coords.reserve(result.points.size());
    for (const auto& p : result.points) coords.push_back(circular_coordinate(fitted, p));
    result.circular_coords = std::move(coords);
  }
}

constexpr int kMaxHalvings = 60;
constexpr double kStressFloor = 1e-24;

}  // namespace

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw StructuralError("learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw StructuralError("Adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw StructuralError("Adam epsilon must be > 0");
  if (max_steps < 0) throw StructuralError("max_steps must be >= 0");
  if (!(rel_threshold >= 0.0)) throw StructuralError("rel_threshold must be >= 0");
  if (patience < 1) throw StructuralError("patience must be >= 1");
}

double stress(const std::vector<ManifoldPoint>& points, const Manifold& manifold,
              const Matrix& dx) {
  const Index n = dx.rows();
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double gap = dx(i, j) - manifold.distance(points[i], points[j]);
      total += gap * gap;
    }
  }
  return total;
}

double embedding_dis2(const std::vector<ManifoldPoint>& points,
                      const Manifold& manifold, const Matrix& dx,
                      const Vector& weights) {
  const Index n = dx.rows();
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double gap = dx(i, j) - manifold.distance(points[i], points[j]);
      total += 2.0 * gap * gap * weights(i) * weights(j);
    }
  }
  return 0.5 * std::sqrt(total);
}

StressGradient stress_gradient(const std::vector<ManifoldPoint>& points,
                               const Manifold& manifold, const Matrix& dx,
                               bool learn_scale) {
  const Index n = dx.rows();
  StressGradient out;
  out.tangents.assign(points.size(), Vector::Zero(manifold.coordinate_count()));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dy = manifold.distance(points[i], points[j]);
      const double coeff = -2.0 * (dx(i, j) - dy);
      const DistanceGradient gi = manifold.distance_gradient(points[i], points[j]);
      const DistanceGradient gj = manifold.distance_gradient(points[j], points[i]);
      out.tangents[i] += coeff * gi.tangent;
      out.tangents[j] += coeff * gj.tangent;
      if (learn_scale && manifold.has_scale()) out.scale += coeff * dy;
    }
  }
  return out;
}

double initial_scale(const EmbeddingProblem& problem) {
  const Manifold& m = problem.manifold;
  ScaleInit mode = problem.scale_init;
  if (mode == ScaleInit::kAuto) {
    mode = problem.learn_scale ? ScaleInit::kDiameter : ScaleInit::kManifold;
  }
  if (mode == ScaleInit::kManifold || !m.has_scale()) return m.radius();
  const double diam = p_diameter(problem.space, kInfinity);
  return diam > 0.0 ? diam / std::numbers::pi : m.radius();
}

EmbeddingResult optimize(const EmbeddingProblem& problem,
                         std::vector<ManifoldPoint> init_points, double init_scale,
                         const OptimizerConfig& cfg) {
  cfg.validate();
  const Matrix& dx = problem.space.distances();
  Manifold manifold = problem.manifold.with_radius(init_scale);
  check_points(init_points, manifold, dx);
  const bool learn = problem.learn_scale && manifold.has_scale();
  const std::size_t n = init_points.size();

  std::vector<ManifoldPoint> points = std::move(init_points);
  double log_scale = std::log(init_scale);
  double current = stress(points, manifold, dx);
  // Stress this far below the data's own energy is round-off, not signal.
  const double floor = kStressFloor * 0.5 * dx.squaredNorm();

  EmbeddingResult result;
  result.trace.push_back(current);
  std::vector<ManifoldPoint> best_points = points;
  double best_log_scale = log_scale;
  double best = current;

  const int coords = manifold.coordinate_count();
  std::vector<Vector> m1(n, Vector::Zero(coords));
  std::vector<Vector> m2(n, Vector::Zero(coords));
  double s1 = 0.0;
  double s2 = 0.0;
  double lr = cfg.learning_rate;
  int t = 0;
  std::vector<double> best_history{best};

  for (int step = 0; step < cfg.max_steps && current > floor; ++step) {
    const StressGradient grad = stress_gradient(points, manifold, dx, learn);
    ++t;
    const double c1 = 1.0 - std::pow(cfg.beta1, t);
    const double c2 = 1.0 - std::pow(cfg.beta2, t);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector& g = grad.tangents[i];
      m1[i] = cfg.beta1 * m1[i] + (1.0 - cfg.beta1) * g;
      m2[i] = cfg.beta2 * m2[i] + (1.0 - cfg.beta2) * g.cwiseAbs2();
      const Vector update =
          -lr * (m1[i] / c1).array() / ((m2[i] / c2).array().sqrt() + cfg.epsilon);
      points[i] = manifold.retract(points[i], manifold.project_tangent(points[i], update));
    }
    if (learn) {
      s1 = cfg.beta1 * s1 + (1.0 - cfg.beta1) * grad.scale;
      s2 = cfg.beta2 * s2 + (1.0 - cfg.beta2) * grad.scale * grad.scale;
      log_scale -= lr * (s1 / c1) / (std::sqrt(s2 / c2) + cfg.epsilon);
      manifold = manifold.with_radius(std::exp(log_scale));
    }
    const double next = stress(points, manifold, dx);
    result.trace.push_back(next);
    result.steps = step + 1;
    if (!std::isfinite(next)) {
      throw NumericalError("stress became non-finite during optimization", result.trace);
    }
    if (next > 10.0 * best && next > floor) {
      if (++result.lr_halvings > kMaxHalvings) {
        throw NumericalError("learning rate halved too many times", result.trace);
      }
      lr *= 0.5;
      points = best_points;
      log_scale = best_log_scale;
      manifold = manifold.with_radius(std::exp(log_scale));
      for (std::size_t i = 0; i < n; ++i) {
        m1[i].setZero();
        m2[i].setZero();
      }
      s1 = s2 = 0.0;
      t = 0;
      current = best;
      continue;
    }
    if (next < best) {
      best = next;
      best_points = points;
      best_log_scale = log_scale;
    }
    current = next;
    best_history.push_back(best);
    if (best_history.size() > static_cast<std::size_t>(cfg.patience)) {
      const double before = best_history[best_history.size() - 1 - cfg.patience];
      if ((before - best) / std::max(before, 1e-300) < cfg.rel_threshold) break;
    }
  }

  result.points = std::move(best_points);
  result.scale = learn ? std::exp(best_log_scale) : init_scale;
  result.stress = best;
  if (result.trace.back() != best) result.trace.push_back(best);
  fill_outputs(result, problem, problem.manifold.with_radius(result.scale));
  return result;
}

EmbeddingResult srgw_gd(const EmbeddingProblem& problem, const OptimizerConfig& cfg) {
  cfg.validate();
  const double scale = initial_scale(problem);
  const Manifold target = problem.manifold.with_radius(scale);
  const std::vector<ManifoldPoint> grid =
      target.grid(problem.grid_count, problem.jitter, problem.seed);
  const Matrix dy = target.pairwise_distances(grid, problem.threads);
  const SolverResult warm = solve_srgw2(problem.space, dy, problem.solver);

  std::vector<Index> map;
  if (warm.monge_map) {
    map = *warm.monge_map;
  } else {
    // Rounding never increases dis_2, so this is only reached through
    // floating-point ties; fall back to each row's heaviest column.
    map.resize(problem.space.size());
    for (Index i = 0; i < problem.space.size(); ++i) {
      warm.coupling.plan().row(i).maxCoeff(&map[i]);
    }
  }
  std::vector<ManifoldPoint> init;
  init.reserve(map.size());
  for (Index j : map) init.push_back(grid[j]);

  EmbeddingResult result = optimize(problem, std::move(init), scale, cfg);
  result.warm_start_dis2 = warm.distortion;
  result.warm_start_map = std::move(map);
  return result;
}

std::vector<EmbeddingResult> random_init_gd(const EmbeddingProblem& problem, int trials,
                                            const OptimizerConfig& cfg) {
  if (trials < 1) throw DomainError("random_init_gd needs at least one trial");
  cfg.validate();
  const double scale = initial_scale(problem);
  const Manifold target = problem.manifold.with_radius(scale);
  std::vector<EmbeddingResult> results(trials);
  parallel_for(static_cast<std::size_t>(trials), problem.threads, [&](std::size_t t) {
    Rng rng(trial_seed(problem.seed, static_cast<int>(t)));
    std::vector<ManifoldPoint> init;
    init.reserve(problem.space.size());
    for (Index i = 0; i < problem.space.size(); ++i) init.push_back(target.random_point(rng));
    try {
      results[t] = optimize(problem, std::move(init), scale, cfg);
    } catch (const NumericalError& err) {
      EmbeddingResult failed;
      failed.trace = err.trace();
      failed.stress = kInfinity;
      failed.dis2 = kInfinity;
      failed.scale = scale;
      failed.failure = err.what();
      results[t] = std::move(failed);
    }
  });
  return results;
}

TrialRange summarize_trials(const std::vector<EmbeddingResult>& trials) {
  TrialRange range{kInfinity, -kInfinity, 0};
  for (const auto& r : trials) {
    if (r.failure) continue;
    range.min = std::min(range.min, r.dis2);
    range.max = std::max(range.max, r.dis2);
    ++range.converged;
  }
  return range;
}

double circular_coordinate(const Manifold& manifold, const ManifoldPoint& point) {
  if (manifold.type() != ManifoldType::kCircle) {
    throw DomainError("circular coordinates need a circle target");
  }
  const double c = point(0) / (2.0 * std::numbers::pi);
  return c >= 1.0 ? 0.0 : c;
}

}  // namespace mvmds
