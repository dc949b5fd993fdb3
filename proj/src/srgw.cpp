#include "mvmds/srgw.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mvmds/errors.hpp"

namespace mvmds {
namespace {

void check_shapes(const Matrix& plan, const Matrix& dx, const Matrix& dy) {
  if (dx.rows() != dx.cols() || dy.rows() != dy.cols()) {
    throw StructuralError("distance matrices must be square");
  }
  if (plan.rows() != dx.rows() || plan.cols() != dy.rows()) {
    throw StructuralError(
        "plan is " + std::to_string(plan.rows()) + "x" +
        std::to_string(plan.cols()) + " but distance matrices are " +
        std::to_string(dx.rows()) + " and " + std::to_string(dy.rows()));
  }
}

double power_of(double x, double p) {
  if (p == 2.0) return x * x;
  if (p == 1.0) return x;
  return std::pow(x, p);
}

struct Cell {
  Index row;
  Index col;
  double mass;
};

std::vector<Cell> cells_above(const Matrix& plan, double threshold) {
  std::vector<Cell> cells;
  for (Index i = 0; i < plan.rows(); ++i) {
    for (Index j = 0; j < plan.cols(); ++j) {
      if (plan(i, j) > threshold) cells.push_back({i, j, plan(i, j)});
    }
  }
  return cells;
}

double relative_threshold(const Matrix& plan) {
  return 1e-12 * plan.maxCoeff();
}

// Quadratic coefficient of E along a direction: E(plan + t d) has t^2 term
// r'(dX.^2)r + c'(dY.^2)c - 2 <d, dX d dY>, r and c the marginals of d.
double quadratic_coefficient(const Matrix& direction, const Matrix& dx2,
                             const Matrix& dy2, const Matrix& dx,
                             const Matrix& dy) {
  const Vector r = direction.rowwise().sum();
  const Vector c = direction.colwise().sum().transpose();
  const Matrix cross = dx * direction * dy;
  return r.dot(dx2 * r) + c.dot(dy2 * c) - 2.0 * direction.cwiseProduct(cross).sum();
}

double clamp_step(double linear, double quadratic) {
  if (quadratic > 0.0) return std::clamp(-linear / (2.0 * quadratic), 0.0, 1.0);
  return linear < 0.0 ? 1.0 : 0.0;
}

struct Factorized {
  Matrix dx;
  Matrix dy;
  Matrix dx2;
  Matrix dy2;

  Factorized(const Matrix& x, const Matrix& y)
      : dx(x), dy(y), dx2(x.cwiseAbs2()), dy2(y.cwiseAbs2()) {}

  ObjectiveGradient evaluate(const Matrix& plan) const {
    const Vector r = plan.rowwise().sum();
    const Vector c = plan.colwise().sum().transpose();
    const Vector ax = dx2 * r;
    const Vector by = dy2 * c;
    const Matrix cross = dx * plan * dy;
    ObjectiveGradient out;
    out.value = r.dot(ax) + c.dot(by) - 2.0 * plan.cwiseProduct(cross).sum();
    out.gradient = 2.0 * (ax.replicate(1, plan.cols()) +
                          by.transpose().replicate(plan.rows(), 1) -
                          2.0 * cross);
    return out;
  }
};

double dis2_from_objective(double e) { return 0.5 * std::sqrt(std::max(e, 0.0)); }

// Source anchors (0, farthest from 0) pinned to the `count` target pairs with
// the closest distance, remaining points placed one at a time by the lowest
// weighted squared gap to those already placed.
std::vector<std::vector<Index>> seeded_maps(const Matrix& dx, const Vector& mu,
                                            const Matrix& dy, int count) {
  const Index n = dx.rows();
  const Index m = dy.rows();
  if (n < 2 || count == 0) return {};
  Index far = 1;
  for (Index k = 2; k < n; ++k) {
    if (dx(0, k) > dx(0, far)) far = k;
  }
  const double anchor = dx(0, far);

  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(m * m));
  for (Index j = 0; j < m; ++j) {
    for (Index l = 0; l < m; ++l) pairs.emplace_back(j, l);
  }
  const std::size_t keep = std::min<std::size_t>(pairs.size(), count);
  std::partial_sort(pairs.begin(), pairs.begin() + keep, pairs.end(),
                    [&](const auto& a, const auto& b) {
                      const double ga = std::abs(dy(a.first, a.second) - anchor);
                      const double gb = std::abs(dy(b.first, b.second) - anchor);
                      return ga != gb ? ga < gb : a < b;
                    });

  std::vector<Index> order{0, far};
  for (Index i = 1; i < n; ++i) {
    if (i != far) order.push_back(i);
  }
  std::vector<std::vector<Index>> maps;
  for (std::size_t s = 0; s < keep; ++s) {
    std::vector<Index> f(n, 0);
    f[0] = pairs[s].first;
    f[far] = pairs[s].second;
    for (std::size_t pos = 2; pos < order.size(); ++pos) {
      const Index i = order[pos];
      Index best = 0;
      double best_cost = kInfinity;
      for (Index j = 0; j < m; ++j) {
        double c = 0.0;
        for (std::size_t q = 0; q < pos; ++q) {
          const Index k = order[q];
          const double gap = dx(i, k) - dy(j, f[k]);
          c += mu(k) * gap * gap;
        }
        if (c < best_cost) {
          best_cost = c;
          best = j;
        }
      }
      f[i] = best;
    }
    maps.push_back(std::move(f));
  }
  return maps;
}

}  // namespace

SemiCoupling::SemiCoupling(Matrix plan, Vector source_weights)
    : plan_(std::move(plan)), weights_(std::move(source_weights)) {
  if (plan_.rows() != weights_.size()) {
    throw StructuralError("plan has " + std::to_string(plan_.rows()) +
                          " rows but " + std::to_string(weights_.size()) +
                          " source weights");
  }
  if (plan_.cols() == 0) throw StructuralError("plan has no columns");
  for (Index i = 0; i < plan_.rows(); ++i) {
    double row = 0.0;
    for (Index j = 0; j < plan_.cols(); ++j) {
      if (!(plan_(i, j) >= 0.0)) {
        throw StructuralError("plan entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") is negative");
      }
      row += plan_(i, j);
    }
    if (std::abs(row - weights_(i)) > kMarginalTolerance) {
      throw StructuralError("row " + std::to_string(i) +
                            " does not sum to its source weight");
    }
  }
}

SemiCoupling SemiCoupling::product(const Vector& weights, Index m) {
  return product(weights, Vector::Constant(m, 1.0 / static_cast<double>(m)));
}

SemiCoupling SemiCoupling::product(const Vector& weights, const Vector& target) {
  return SemiCoupling(weights * target.transpose(), weights);
}

SemiCoupling SemiCoupling::from_map(const Vector& weights,
                                    const std::vector<Index>& f, Index m) {
  if (static_cast<Index>(f.size()) != weights.size()) {
    throw StructuralError("map length does not match source size");
  }
  Matrix plan = Matrix::Zero(weights.size(), m);
  for (Index i = 0; i < weights.size(); ++i) {
    if (f[i] < 0 || f[i] >= m) throw StructuralError("map target out of range");
    plan(i, f[i]) = weights(i);
  }
  return SemiCoupling(std::move(plan), weights);
}

SemiCoupling SemiCoupling::random(const Vector& weights, Index m, Rng& rng) {
  Matrix plan = Matrix::Zero(weights.size(), m);
  for (Index i = 0; i < weights.size(); ++i) {
    double total = 0.0;
    for (Index j = 0; j < m; ++j) {
      const double u = rng.uniform();
      plan(i, j) = u < 0.5 ? 0.0 : rng.uniform();
      total += plan(i, j);
    }
    if (total == 0.0) {
      plan(i, static_cast<Index>(rng.below(m))) = 1.0;
      total = 1.0;
    }
    plan.row(i) *= weights(i) / total;
  }
  return SemiCoupling(std::move(plan), weights);
}

double SemiCoupling::default_support_threshold() const {
  return relative_threshold(plan_);
}

void SolverConfig::validate() const {
  if (max_iterations < 1) throw StructuralError("max_iterations must be >= 1");
  if (!(rel_tolerance > 0.0)) throw StructuralError("rel_tolerance must be > 0");
  if (seeded_starts < 0) throw StructuralError("seeded_starts must be >= 0");
}

double distortion_p(const SemiCoupling& coupling, const Matrix& dx,
                    const Matrix& dy, double p) {
  check_shapes(coupling.plan(), dx, dy);
  if (!(p >= 1.0) || std::isinf(p)) {
    throw DomainError("distortion_p requires finite p >= 1");
  }
  const std::vector<Cell> cells = cells_above(coupling.plan(), 0.0);
  double total = 0.0;
  for (const Cell& a : cells) {
    double inner = 0.0;
    for (const Cell& b : cells) {
      inner += power_of(std::abs(dx(a.row, b.row) - dy(a.col, b.col)), p) * b.mass;
    }
    total += inner * a.mass;
  }
  return 0.5 * std::pow(total, 1.0 / p);
}

double distortion_inf(const SemiCoupling& coupling, const Matrix& dx,
                      const Matrix& dy, std::optional<double> support_threshold) {
  check_shapes(coupling.plan(), dx, dy);
  const double threshold =
      support_threshold.value_or(coupling.default_support_threshold());
  const std::vector<Cell> cells = cells_above(coupling.plan(), threshold);
  if (cells.empty()) throw DomainError("coupling has empty support");
  double worst = 0.0;
  for (const Cell& a : cells) {
    for (const Cell& b : cells) {
      worst = std::max(worst, std::abs(dx(a.row, b.row) - dy(a.col, b.col)));
    }
  }
  return 0.5 * worst;
}

ObjectiveGradient objective_and_gradient(const Matrix& plan, const Matrix& dx,
                                         const Matrix& dy) {
  check_shapes(plan, dx, dy);
  return Factorized(dx, dy).evaluate(plan);
}

SemiCoupling lmo(const Matrix& g, const Vector& weights) {
  if (g.rows() != weights.size()) {
    throw StructuralError("gradient rows do not match weights");
  }
  Matrix plan = Matrix::Zero(g.rows(), g.cols());
  for (Index i = 0; i < g.rows(); ++i) {
    Index best = 0;
    for (Index j = 1; j < g.cols(); ++j) {
      if (g(i, j) < g(i, best)) best = j;
    }
    plan(i, best) = weights(i);
  }
  return SemiCoupling(std::move(plan), weights);
}

double exact_line_search(const SemiCoupling& current, const SemiCoupling& vertex,
                         const Matrix& dx, const Matrix& dy) {
  check_shapes(current.plan(), dx, dy);
  check_shapes(vertex.plan(), dx, dy);
  const Matrix direction = vertex.plan() - current.plan();
  if (direction.isZero(0.0)) return 0.0;
  const ObjectiveGradient eg = objective_and_gradient(current.plan(), dx, dy);
  const double linear = eg.gradient.cwiseProduct(direction).sum();
  const double quadratic = quadratic_coefficient(
      direction, dx.cwiseAbs2(), dy.cwiseAbs2(), dx, dy);
  return clamp_step(linear, quadratic);
}

SolverResult solve_srgw2(const MetricMeasureSpace& x, const Matrix& dy,
                         const SolverConfig& cfg) {
  cfg.validate();
  const MetricValidation target = validate_metric(dy, false);
  if (!target.structurally_valid()) {
    throw StructuralError("invalid target distances: " + target.summary());
  }
  const Vector& mu = x.weights();
  const Index m = dy.rows();
  if (m == 0) throw StructuralError("target space is empty");

  Matrix plan;
  if (cfg.init == SolverInit::kRandom) {
    Rng rng(cfg.seed);
    plan = SemiCoupling::random(mu, m, rng).plan();
  } else {
    plan = SemiCoupling::product(mu, m).plan();
  }

  const Factorized model(x.distances(), dy);
  ObjectiveGradient eg = model.evaluate(plan);
  std::vector<double> trace{eg.value};
  int iterations = 0;
  for (; iterations < cfg.max_iterations; ++iterations) {
    if (eg.value <= 0.0) break;
    const SemiCoupling vertex = lmo(eg.gradient, mu);
    const Matrix direction = vertex.plan() - plan;
    const double linear = eg.gradient.cwiseProduct(direction).sum();
    if (!(linear < 0.0)) break;  // stationary: no descent direction
    const double step = clamp_step(
        linear, quadratic_coefficient(direction, model.dx2, model.dy2,
                                      model.dx, model.dy));
    if (step <= 0.0) break;
    Matrix next = step >= 1.0 ? vertex.plan()
                              : Matrix((1.0 - step) * plan + step * vertex.plan());
    ObjectiveGradient next_eg = model.evaluate(next);
    if (!(next_eg.value <= eg.value)) break;
    const double decrease = eg.value - next_eg.value;
    const double previous = eg.value;
    plan = std::move(next);
    eg = std::move(next_eg);
    trace.push_back(eg.value);
    if (decrease <= cfg.rel_tolerance * previous) {
      ++iterations;
      break;
    }
  }

  SemiCoupling iterate(plan, mu);
  SolverResult result{iterate, std::move(trace), 0.0, 0.0, std::nullopt,
                      iterations, std::nullopt};
  result.unrounded_distortion = dis2_from_objective(eg.value);
  result.distortion = result.unrounded_distortion;

  MongeRounding rounded =
      monge_round(iterate, x.distances(), dy, 2.0, cfg.support_threshold);
  const double rounded_distortion =
      dis2_from_objective(model.evaluate(rounded.coupling.plan()).value);
  if (rounded_distortion <= result.unrounded_distortion + 1e-12) {
    result.coupling = std::move(rounded.coupling);
    result.distortion = rounded_distortion;
    result.monge_map = std::move(rounded.map);
  }

  const std::vector<std::vector<Index>> seeds =
      seeded_maps(x.distances(), mu, dy, cfg.seeded_starts);
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    if (result.distortion <= 0.0) break;
    MongeRounding polished = monge_round(SemiCoupling::from_map(mu, seeds[s], m),
                                         x.distances(), dy, 2.0, cfg.support_threshold);
    const double d = dis2_from_objective(model.evaluate(polished.coupling.plan()).value);
    if (d < result.distortion) {
      result.coupling = std::move(polished.coupling);
      result.distortion = d;
      result.monge_map = std::move(polished.map);
      result.seeded_start = static_cast<int>(s);
    }
  }
  return result;
}

MongeRounding monge_round(const SemiCoupling& coupling, const Matrix& dx,
                          const Matrix& dy, double p,
                          std::optional<double> support_threshold) {
  check_shapes(coupling.plan(), dx, dy);
  if (!(p >= 1.0)) throw DomainError("monge_round requires p >= 1");
  const bool sup_norm = std::isinf(p);
  const double threshold =
      support_threshold.value_or(coupling.default_support_threshold());
  const Index n = coupling.rows();
  const Index m = coupling.cols();
  const Vector& mu = coupling.source_weights();

  // Per-row support lists; a rounded row becomes a single Dirac cell.
  std::vector<std::vector<Cell>> rows(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const double mass = coupling.plan()(i, j);
      if (sup_norm ? mass > threshold : mass > 0.0) rows[i].push_back({i, j, mass});
    }
  }

  std::vector<Index> map(n, -1);
  std::vector<double> cost(m);
  int passes = 0;
  bool changed = true;
  while (changed && passes < kMaxRoundingPasses) {
    changed = false;
    ++passes;
    for (Index i = 0; i < n; ++i) {
      std::fill(cost.begin(), cost.end(), 0.0);
      for (Index k = 0; k < n; ++k) {
        if (k == i) continue;
        const double dik = dx(i, k);
        for (const Cell& cell : rows[k]) {
          for (Index j = 0; j < m; ++j) {
            const double gap = std::abs(dik - dy(j, cell.col));
            if (sup_norm) {
              cost[j] = std::max(cost[j], gap);
            } else {
              cost[j] += power_of(gap, p) * cell.mass;
            }
          }
        }
      }
      Index best = 0;
      for (Index j = 1; j < m; ++j) {
        if (cost[j] < cost[best]) best = j;
      }
      const bool already = rows[i].size() == 1 && rows[i].front().col == best;
      if (!already) {
        rows[i].assign(1, Cell{i, best, mu(i)});
        changed = true;
      }
      map[i] = best;
    }
  }
  return {map, SemiCoupling::from_map(mu, map, m), passes};
}

bool is_monge(const SemiCoupling& coupling, std::optional<double> support_threshold) {
  const double threshold =
      support_threshold.value_or(coupling.default_support_threshold());
  for (Index i = 0; i < coupling.rows(); ++i) {
    int count = 0;
    for (Index j = 0; j < coupling.cols(); ++j) {
      if (coupling.plan()(i, j) > threshold) ++count;
    }
    if (count != 1) return false;
  }
  return true;
}

}  // namespace mvmds
