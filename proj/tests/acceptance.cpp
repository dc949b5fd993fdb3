// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mvmds/datasets.hpp"
#include "mvmds/embed.hpp"
#include "mvmds/gromov.hpp"
#include "mvmds/manifold.hpp"
#include "mvmds/redistrict.hpp"
#include "mvmds/rng.hpp"
#include "mvmds/srgw.hpp"

#ifndef MVMDS_CLI_PATH
#error "MVMDS_CLI_PATH must point at the mvmds executable"
#endif

using namespace mvmds;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Euclidean distances between random points in the unit square.
Matrix random_metric(Index n, Rng& rng) {
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      d(i, j) = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  return d;
}

Vector random_weights(Index n, Rng& rng) {
  Vector w(n);
  for (Index i = 0; i < n; ++i) w(i) = 0.1 + rng.uniform();
  return w / w.sum();
}

// Reference p-distortion by explicit quadruple loop.
double naive_dis(const Matrix& plan, const Matrix& dx, const Matrix& dy, double p) {
  double acc = 0.0;
  for (Index i = 0; i < dx.rows(); ++i)
    for (Index j = 0; j < dy.rows(); ++j)
      for (Index k = 0; k < dx.rows(); ++k)
        for (Index l = 0; l < dy.rows(); ++l)
          acc += std::pow(std::abs(dx(i, k) - dy(j, l)), p) * plan(i, j) * plan(k, l);
  return 0.5 * std::pow(acc, 1.0 / p);
}

double naive_objective(const Matrix& plan, const Matrix& dx, const Matrix& dy) {
  double acc = 0.0;
  for (Index i = 0; i < dx.rows(); ++i)
    for (Index j = 0; j < dy.rows(); ++j)
      for (Index k = 0; k < dx.rows(); ++k)
        for (Index l = 0; l < dy.rows(); ++l) {
          const double g = dx(i, k) - dy(j, l);
          acc += g * g * plan(i, j) * plan(k, l);
        }
  return acc;
}

// ---------------------------------------------------------------------------

Outcome triangle_failure() {
  const double eps = 0.1;
  const Matrix point = Matrix::Zero(1, 1);
  Matrix pair(2, 2);
  pair << 0, 1, 1, 0;
  const MetricMeasureSpace x(point);
  const MetricMeasureSpace y(pair, Vector{{1 - eps, eps}});
  const MetricMeasureSpace z(pair);

  auto directed = [](const MetricMeasureSpace& a, const MetricMeasureSpace& b) {
    return solve_srgw2(a, b.distances()).distortion;
  };
  auto sym = [&](const MetricMeasureSpace& a, const MetricMeasureSpace& b) {
    return std::max(directed(a, b), directed(b, a));
  };
  const double xy = sym(x, y);
  const double xz = sym(x, z);
  const double yz = sym(y, z);

  const double ref_xy = std::sqrt(2 * eps * (1 - eps));
  const double ref_xz = std::sqrt(0.5);
  const double factor = xz / ref_xz;
  const bool formulas =
      std::abs(xy - factor * ref_xy) <= 1e-9 && std::abs(yz) <= 1e-9 &&
      std::abs(factor - 0.5) <= 1e-9;
  const bool fails = xz > xy + yz;
  return {formulas && fails,
          "d(X,Y)=" + fmt("%.9f", xy) + " d(X,Z)=" + fmt("%.9f", xz) +
              " d(Y,Z)=" + fmt("%.3g", yz) + " factor=" + fmt("%.9f", factor)};
}

Outcome sup_equivalence() {
  Rng rng(2024);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = 1 + static_cast<Index>(rng.below(4));
    const Index m = 1 + static_cast<Index>(rng.below(4));
    const Matrix dx = random_metric(n, rng);
    const Matrix dy = random_metric(m, rng);
    const MetricMeasureSpace x(dx, random_weights(n, rng));
    const MetricMeasureSpace y(dy, random_weights(m, rng));
    const double xy = srgw_inf_bruteforce(x, dy).value;
    const double yx = srgw_inf_bruteforce(y, dx).value;
    if (xy != srgh(dx, dy).value || yx != srgh(dy, dx).value) ++mismatches;
    if (std::max(xy, yx) != mgh(dx, dy)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches / 200 instances"};
}

Outcome monge_nonincrease() {
  Rng rng(7);
  int violations = 0;
  double worst = -kInfinity;
  for (int t = 0; t < 500; ++t) {
    const Index n = 1 + static_cast<Index>(rng.below(6));
    const Index m = 1 + static_cast<Index>(rng.below(6));
    const Matrix dx = random_metric(n, rng);
    const Matrix dy = random_metric(m, rng);
    const SemiCoupling gamma = SemiCoupling::random(random_weights(n, rng), m, rng);
    for (double p : {1.0, 2.0, kInfinity}) {
      const MongeRounding r = monge_round(gamma, dx, dy, p);
      const double before = std::isinf(p) ? distortion_inf(gamma, dx, dy)
                                          : distortion_p(gamma, dx, dy, p);
      const double after = std::isinf(p) ? distortion_inf(r.coupling, dx, dy)
                                         : distortion_p(r.coupling, dx, dy, p);
      worst = std::max(worst, after - before);
      if (after > before + 1e-12 || !is_monge(r.coupling)) ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations / 1500, max increase " +
                               fmt("%.3g", worst)};
}

Outcome solver_exactness() {
  Rng rng(11);
  int failures = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Index m = 12;
    const Index k = 2 + static_cast<Index>(rng.below(9));
    const Matrix dy = random_metric(m, rng);
    std::vector<Index> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    for (Index i = m - 1; i > 0; --i) std::swap(pick[i], pick[rng.below(i + 1)]);
    pick.resize(k);
    Matrix dx(k, k);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j) dx(i, j) = dy(pick[i], pick[j]);
    const SolverResult r = solve_srgw2(MetricMeasureSpace(dx), dy);
    worst = std::max(worst, r.distortion);
    bool isometric = r.monge_map.has_value();
    if (isometric) {
      const auto& f = *r.monge_map;
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
          if (std::abs(dx(i, j) - dy(f[i], f[j])) > 1e-9) isometric = false;
    }
    if (r.distortion > 1e-6 || !isometric) ++failures;
  }

  Matrix two(2, 2), one(2, 2);
  two << 0, 2, 2, 0;
  one << 0, 1, 1, 0;
  const Vector w = Vector::Constant(2, 0.5);
  double oracle = kInfinity;
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) {
      Matrix plan = Matrix::Zero(2, 2);
      plan(0, a) += 0.5;
      plan(1, b) += 0.5;
      oracle = std::min(oracle, naive_dis(plan, two, one, 2.0));
    }
  const double solved = solve_srgw2(MetricMeasureSpace(two), one).distortion;
  const bool two_point =
      std::abs(solved - oracle) <= 1e-6 && std::abs(oracle - std::pow(0.5, 1.5)) <= 1e-12;
  return {failures == 0 && two_point,
          std::to_string(failures) + " / 20 embedded subsets missed (max dis2 " +
              fmt("%.3g", worst) + "), two-point " + fmt("%.9f", solved) + " vs " +
              fmt("%.9f", oracle)};
}

Outcome frank_wolfe_monotone() {
  Rng rng(5);
  int increases = 0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(19));
    const Index m = 2 + static_cast<Index>(rng.below(19));
    SolverConfig cfg;
    if (t % 2 == 1) {
      cfg.init = SolverInit::kRandom;
      cfg.seed = static_cast<std::uint64_t>(t);
    }
    const SolverResult r = solve_srgw2(
        MetricMeasureSpace(random_metric(n, rng), random_weights(n, rng)),
        random_metric(m, rng), cfg);
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
      if (r.objective_trace[i] > r.objective_trace[i - 1]) ++increases;
  }
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Index n = 1 + static_cast<Index>(rng.below(8));
    const Index m = 1 + static_cast<Index>(rng.below(8));
    const Matrix dx = random_metric(n, rng);
    const Matrix dy = random_metric(m, rng);
    const SemiCoupling g = SemiCoupling::random(random_weights(n, rng), m, rng);
    const double fast = objective_and_gradient(g.plan(), dx, dy).value;
    worst = std::max(worst, std::abs(fast - naive_objective(g.plan(), dx, dy)));
  }
  return {increases == 0 && worst <= 1e-10,
          std::to_string(increases) + " trace increases, factorized vs naive " +
              fmt("%.3g", worst)};
}

// Relative error with a floor so that exact zeros compare sanely.
double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8});
}

ManifoldPoint along(const Manifold& m, const ManifoldPoint& p, const Vector& v, double t) {
  if (m.type() == ManifoldType::kSphere) return (p + t * v).normalized();
  return p + t * v;
}

std::vector<ManifoldPoint> safe_config(const Manifold& m, int n, Rng& rng) {
  for (;;) {
    std::vector<ManifoldPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(m.random_point(rng));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) {
        const double a = m.distance(pts[i], pts[j]) / m.radius();
        ok = a > 0.05 && a < kPi - 0.05;
      }
    if (ok) return pts;
  }
}

Outcome gradients() {
  Rng rng(99);
  const double h = 1e-6;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double radius = rng.uniform(0.5, 3.0);
    const Manifold m = t % 2 == 0 ? Manifold::circle(radius) : Manifold::sphere(radius);
    const int n = 4 + static_cast<int>(rng.below(4));
    const std::vector<ManifoldPoint> pts = safe_config(m, n, rng);

    // distance_gradient along a random tangent direction, and in log radius
    const ManifoldPoint& p = pts[0];
    const ManifoldPoint& q = pts[1];
    Vector v(m.coordinate_count());
    for (Index c = 0; c < v.size(); ++c) v(c) = rng.normal();
    v = m.project_tangent(p, v);
    const DistanceGradient dg = m.distance_gradient(p, q);
    const double fd = (m.distance(along(m, p, v, h), q) - m.distance(along(m, p, v, -h), q)) /
                      (2 * h);
    worst = std::max(worst, rel_err(dg.tangent.dot(v), fd));
    const double fd_scale = (m.with_radius(radius * std::exp(h)).distance(p, q) -
                             m.with_radius(radius * std::exp(-h)).distance(p, q)) /
                            (2 * h);
    worst = std::max(worst, rel_err(dg.scale, fd_scale));

    // stress_gradient against the stress of a perturbed configuration
    Matrix dx(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dx(i, j) = i == j ? 0.0 : m.distance(pts[i], pts[j]) * rng.uniform(0.8, 1.2);
    dx = 0.5 * (dx + dx.transpose()).eval();
    const StressGradient sg = stress_gradient(pts, m, dx, true);
    for (int i = 0; i < n; ++i) {
      Vector u(m.coordinate_count());
      for (Index c = 0; c < u.size(); ++c) u(c) = rng.normal();
      u = m.project_tangent(pts[i], u);
      auto plus = pts, minus = pts;
      plus[i] = along(m, pts[i], u, h);
      minus[i] = along(m, pts[i], u, -h);
      const double fd_i = (stress(plus, m, dx) - stress(minus, m, dx)) / (2 * h);
      worst = std::max(worst, rel_err(sg.tangents[i].dot(u), fd_i));
    }
    const double fd_r = (stress(pts, m.with_radius(radius * std::exp(h)), dx) -
                         stress(pts, m.with_radius(radius * std::exp(-h)), dx)) /
                        (2 * h);
    worst = std::max(worst, rel_err(sg.scale, fd_r));
  }
  return {worst <= 1e-4, "max relative error " + fmt("%.3g", worst)};
}

Outcome isometry_recovery() {
  const OptimizerConfig circle_cfg{};
  const double true_radius = 2.5;
  const ManifoldSample c = sample_manifold(Manifold::circle(true_radius), 50, 0.0, 31);
  EmbeddingProblem cp{.space = c.space, .manifold = Manifold::circle(1.0)};
  cp.learn_scale = true;
  cp.grid_count = 200;
  cp.seed = 1;
  const EmbeddingResult cr = srgw_gd(cp, circle_cfg);
  const double diam = c.space.distances().maxCoeff();
  const bool circle_ok = cr.dis2 <= 1e-3 * diam &&
                         std::abs(cr.scale - true_radius) <= 0.02 * true_radius;

  OptimizerConfig sphere_cfg;
  sphere_cfg.learning_rate = 0.1;
  const ManifoldSample s = sample_manifold(Manifold::sphere(6371.0), 20, 0.0, 32);
  EmbeddingProblem sp{.space = s.space, .manifold = Manifold::sphere(6371.0)};
  sp.learn_scale = true;
  sp.grid_count = 200;
  sp.seed = 2;
  const EmbeddingResult sr = srgw_gd(sp, sphere_cfg);
  const Matrix fitted = Manifold::sphere(sr.scale).pairwise_distances(sr.points);
  const double max_err = (fitted - s.space.distances()).cwiseAbs().maxCoeff();
  return {circle_ok && max_err <= 5.0,
          "circle dis2/diam " + fmt("%.3g", cr.dis2 / diam) + " radius " +
              fmt("%.5f", cr.scale) + " (true 2.5); sphere max error " +
              fmt("%.3f", max_err) + " km, radius " + fmt("%.2f", sr.scale)};
}

Outcome warm_start_beats_random() {
  const RotatedPatternData data = rotated_pattern(10, 200, 17);
  EmbeddingProblem p{.space = data.space, .manifold = Manifold::circle(1.0)};
  p.learn_scale = true;
  p.grid_count = 200;
  p.seed = 3;
  const OptimizerConfig cfg{};
  const EmbeddingResult warm = srgw_gd(p, cfg);
  const std::vector<EmbeddingResult> trials = random_init_gd(p, 10, cfg);
  std::vector<double> d;
  for (const auto& t : trials) d.push_back(t.dis2);
  std::sort(d.begin(), d.end());
  const double median = 0.5 * (d[4] + d[5]);
  return {warm.dis2 < median, "SRGW+GD " + fmt("%.5g", warm.dis2) + " vs GD median " +
                                  fmt("%.5g", median) + " (min " + fmt("%.5g", d.front()) +
                                  ", max " + fmt("%.5g", d.back()) + ")"};
}

Outcome redistricting_invariants() {
  const Ensemble e = synthetic_ensemble(10, 50, 21);
  const MetricMeasureSpace space = ensemble_distances(e);
  const Matrix& d = space.distances();
  const Index n = d.rows();
  int bad = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (d(i, j) != d(j, i)) ++bad;
      for (Index k = 0; k < n; ++k)
        if (d(i, k) > d(i, j) + d(j, k)) ++bad;
    }

  EmbeddingProblem p{.space = space, .manifold = Manifold::circle(1.0)};
  p.learn_scale = true;
  p.grid_count = 200;
  p.seed = 4;
  const EmbeddingResult r = srgw_gd(p, OptimizerConfig{});
  const std::vector<double>& coords = *r.circular_coords;
  const std::vector<ArcSummary> arcs = arc_summaries(coords, e);

  Ensemble flipped = e;
  for (Plan& plan : flipped.plans) plan = swap_labels(plan);
  const std::vector<ArcSummary> arcs_flipped = arc_summaries(coords, flipped);

  std::vector<int> seen(e.plan_count(), 0);
  double flip_gap = 0.0;
  bool in_range = true;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (std::size_t idx : arcs[a].plan_indices) ++seen[idx];
    if (arcs[a].fractions.has_value() != arcs_flipped[a].fractions.has_value()) ++bad;
    if (!arcs[a].fractions) continue;
    for (std::size_t u = 0; u < arcs[a].fractions->size(); ++u) {
      const double f = (*arcs[a].fractions)[u];
      in_range = in_range && f >= 0.0 && f <= 1.0;
      flip_gap = std::max(flip_gap, std::abs((*arcs_flipped[a].fractions)[u] - (1.0 - f)));
    }
  }
  const bool partition =
      std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
  return {bad == 0 && partition && in_range && flip_gap <= 1e-12,
          std::to_string(bad) + " metric/shape defects, partition " +
              (partition ? "ok" : "broken") + ", flip gap " + fmt("%.3g", flip_gap)};
}

Outcome hausdorff_oracle() {
  Rng rng(13);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const Matrix dz = random_metric(n, rng);
    auto subset = [&] {
      std::vector<Index> s;
      while (s.empty())
        for (Index i = 0; i < n; ++i)
          if (rng.uniform() < 0.5) s.push_back(i);
      return s;
    };
    const std::vector<Index> a = subset();
    const std::vector<Index> b = subset();
    // Smallest candidate radius r such that each set lies in the closed r-ball
    // neighbourhood of the other.
    std::vector<double> radii(dz.data(), dz.data() + dz.size());
    std::sort(radii.begin(), radii.end());
    auto covers = [&](const std::vector<Index>& s, const std::vector<Index>& by, double r) {
      return std::all_of(s.begin(), s.end(), [&](Index x) {
        return std::any_of(by.begin(), by.end(), [&](Index y) { return dz(x, y) <= r; });
      });
    };
    double oracle = kInfinity;
    for (double r : radii)
      if (covers(a, b, r) && covers(b, a, r)) {
        oracle = r;
        break;
      }
    const double value =
        std::max(asymmetric_hausdorff(a, b, dz), asymmetric_hausdorff(b, a, dz));
    if (value != oracle) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches / 200 pairs"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file under `dir` plus captured stdout, keyed by relative path.
std::string snapshot(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string out;
  for (const auto& f : files) out += fs::relative(f, dir).string() + "\n" + slurp(f) + "\n";
  return out;
}

Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / "mvmds_acceptance_cli";
  fs::remove_all(root);
  const std::string cli = MVMDS_CLI_PATH;
  const std::vector<std::string> commands = {
      "synth circle --n 30 --radius 2 --seed 5 --out circle.csv",
      "synth sphere --n 12 --radius 6371 --seed 5 --out sphere.csv",
      "synth euclidean --n 10 --dim 3 --noise 0.01 --seed 5 --out euclid.csv",
      "synth rotated --n 40 --anchors 8 --seed 5 --out rotated.csv",
      "synth cities --n 10 --seed 5 --out cities.csv",
      "synth ensemble --n 40 --side 8 --seed 5 --out plans.csv",
      "synth sphere --n 6 --seed 6 --out small_sphere.csv",
      "synth euclidean --n 5 --seed 6 --out small_plane.csv",
      "embed --input circle.csv --manifold circle:r=1 --learn-scale --grid 100 --seed 42 "
      "--gd-trials 3 --out emb",
      "embed --input cities.csv --manifold sphere:r=6371 --lr 0.1 --grid 60 --seed 42 "
      "--out sph",
      "embed --input euclid.csv --manifold euclidean:d=2 --grid 64 --seed 42 --out euc",
      "srgw --x circle.csv --y sphere.csv --out coupling",
      "srgw --x circle.csv --y euclid.csv --init random --seed 9 --out coupling_rand",
      "gh --x small_sphere.csv --y small_plane.csv --out gh.json",
      "redistrict --plans plans.csv --grid 300 --seed 7 --out red",
      "plot --embedding emb.csv --manifold circle:r=1 --out plot.svg",
  };
  std::vector<std::string> runs;
  int failures = 0;
  for (int threads : {1, 4}) {
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / ("t" + std::to_string(threads) + "_" + std::to_string(rep));
      fs::create_directories(dir);
      for (std::size_t c = 0; c < commands.size(); ++c) {
        const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' --threads " +
                                std::to_string(threads) + " " + commands[c] + " > stdout_" +
                                std::to_string(c) + ".txt 2>&1";
        if (std::system(cmd.c_str()) != 0) ++failures;
      }
      runs.push_back(snapshot(dir));
    }
  }
  const bool identical =
      std::all_of(runs.begin(), runs.end(), [&](const std::string& r) { return r == runs[0]; });
  fs::remove_all(root);
  return {failures == 0 && identical,
          std::to_string(commands.size()) + " commands x 4 runs, " + std::to_string(failures) +
              " nonzero exits, outputs " + (identical ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"srGW_2 triangle inequality fails (eps=0.1)", 1, triangle_failure},
      {"srGW_inf = srGH and max = mGH (200 instances)", 30, sup_equivalence},
      {"Monge rounding never increases dis_p", 30, monge_nonincrease},
      {"solver exact on isometric subsets; two-point case", 5, solver_exactness},
      {"objective trace monotone; factorized = naive", 60, frank_wolfe_monotone},
      {"gradients match central differences", 10, gradients},
      {"isometry recovery on circle and sphere", 120, isometry_recovery},
      {"SRGW+GD below median random-init GD", 180, warm_start_beats_random},
      {"redistricting pipeline invariants", 30, redistricting_invariants},
      {"Hausdorff equals cover-radius oracle", 5, hausdorff_oracle},
      {"CLI byte-identical across runs and threads", 120, cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= criteria[i].budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %2zu  %-52s %s [%.2fs / %.0fs]\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.detail.c_str(), secs, criteria[i].budget_s);
    std::fflush(stdout);
  }
  std::printf("%d / %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
