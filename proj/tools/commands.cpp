#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mvmds/datasets.hpp"
#include "mvmds/embed.hpp"
#include "mvmds/errors.hpp"
#include "mvmds/gromov.hpp"
#include "mvmds/io.hpp"
#include "mvmds/redistrict.hpp"
#include "mvmds/srgw.hpp"
#include "mvmds/svg.hpp"

namespace mvmds::cli {
namespace {

using nlohmann::json;

MetricMeasureSpace load_space(const std::string& path, const std::string& weights_path) {
  io::DistanceTable table = io::read_distance_csv(path);
  std::optional<Vector> weights;
  if (!weights_path.empty()) weights = io::read_weights(weights_path);
  const MetricValidation report = validate_metric(table.distances, true, 1e-9);
  if (!report.satisfies_triangle(1e-9)) {
    std::cerr << "warning: " << path << ": " << report.summary() << '\n';
  }
  return MetricMeasureSpace(std::move(table.distances), std::move(weights),
                            std::move(table.labels));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw StructuralError("--seed is required for stochastic steps");
  return *seed;
}

json optimizer_json(const OptimizerConfig& cfg) {
  return {{"learning_rate", cfg.learning_rate}, {"beta1", cfg.beta1},
          {"beta2", cfg.beta2},                 {"epsilon", cfg.epsilon},
          {"max_steps", cfg.max_steps},         {"rel_threshold", cfg.rel_threshold},
          {"patience", cfg.patience}};
}

json embedding_json(const EmbeddingResult& r) {
  json j;
  j["scale"] = r.scale;
  j["stress"] = r.stress;
  j["dis2"] = r.dis2;
  j["steps"] = r.steps;
  j["lr_halvings"] = r.lr_halvings;
  j["trace"] = r.trace;
  if (r.warm_start_dis2) j["warm_start_dis2"] = *r.warm_start_dis2;
  if (r.warm_start_map) j["warm_start_map"] = *r.warm_start_map;
  if (r.failure) j["failure"] = *r.failure;
  return j;
}

void write_trace_on_failure(const std::string& path, const NumericalError& err) {
  io::write_file(path, dump(json{{"error", err.what()}, {"trace", err.trace()}}));
}

}  // namespace

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const CapacityError& e) {
    std::cerr << "capacity guard: " << e.what() << '\n';
    return kCapacityError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << " (trace length "
              << e.trace().size() << ")\n";
    return kNumericalError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int run_embed(const EmbedOptions& opts, unsigned threads) {
  const std::uint64_t seed = require_seed(opts.seed);
  EmbeddingProblem problem{
      .space = load_space(opts.input, opts.weights),
      .manifold = Manifold::parse(opts.manifold),
      .learn_scale = opts.learn_scale,
      .grid_count = opts.grid,
      .jitter = opts.jitter,
      .seed = seed,
      .threads = threads,
  };
  if (problem.grid_count < problem.space.size()) {
    std::cerr << "warning: grid (" << problem.grid_count << ") smaller than the "
              << problem.space.size() << " input points\n";
  }
  OptimizerConfig cfg;
  cfg.learning_rate = opts.lr;
  cfg.max_steps = opts.max_steps;
  cfg.rel_threshold = opts.rel_threshold;
  cfg.patience = opts.patience;

  EmbeddingResult result;
  try {
    result = srgw_gd(problem, cfg);
  } catch (const NumericalError& err) {
    write_trace_on_failure(opts.output + "_trace.json", err);
    throw;
  }
  const Manifold fitted = problem.manifold.with_radius(result.scale);
  const std::vector<std::string>& labels = problem.space.labels();

  io::write_file(opts.output + ".csv",
                 render([&](std::ostream& o) { io::write_embedding_csv(o, result, labels); }));
  io::write_file(opts.output + ".svg", svg::embedding_scatter(fitted, result.points, "SRGW+GD"));
  if (result.circular_coords) {
    io::write_file(opts.output + "_hist.csv", render([&](std::ostream& o) {
                     io::write_histogram_csv(o, *result.circular_coords, 20);
                   }));
  }

  json meta;
  meta["input"] = opts.input;
  meta["manifold"] = problem.manifold.to_string();
  meta["fitted_manifold"] = fitted.to_string();
  meta["learn_scale"] = opts.learn_scale;
  meta["grid"] = opts.grid;
  meta["jitter"] = opts.jitter;
  meta["seed"] = seed;
  meta["optimizer"] = optimizer_json(cfg);
  meta["result"] = embedding_json(result);

  std::cout << "stress " << io::format_short(result.stress) << '\n'
            << "dis2 " << io::format_short(result.dis2) << '\n'
            << "warm_start_dis2 " << io::format_short(*result.warm_start_dis2) << '\n'
            << "scale " << io::format_short(result.scale) << '\n';

  if (opts.gd_trials > 0) {
    const std::vector<EmbeddingResult> trials = random_init_gd(problem, opts.gd_trials, cfg);
    const TrialRange range = summarize_trials(trials);
    json t = json::array();
    for (const auto& r : trials) {
      t.push_back({{"dis2", r.failure ? json(nullptr) : json(r.dis2)},
                   {"steps", r.steps},
                   {"failure", r.failure ? json(*r.failure) : json(nullptr)}});
    }
    meta["random_init_gd"] = {{"trials", t},
                              {"min_dis2", range.converged ? json(range.min) : json(nullptr)},
                              {"max_dis2", range.converged ? json(range.max) : json(nullptr)}};
    std::cout << "gd_min_max " << io::format_short(range.min) << ' '
              << io::format_short(range.max) << '\n';
  }
  io::write_file(opts.output + ".json", dump(meta));
  return kOk;
}

int run_srgw(const SrgwOptions& opts, unsigned) {
  const MetricMeasureSpace x = load_space(opts.x, opts.x_weights);
  const io::DistanceTable y = io::read_distance_csv(opts.y);
  SolverConfig cfg;
  cfg.max_iterations = opts.max_iterations;
  cfg.rel_tolerance = opts.tolerance;
  if (opts.init == "random") {
    cfg.init = SolverInit::kRandom;
    cfg.seed = opts.seed;
  } else if (opts.init != "product") {
    throw StructuralError("--init must be 'product' or 'random'");
  }
  const SolverResult result = solve_srgw2(x, y.distances, cfg);
  std::cout << "srgw2 " << io::format_short(result.distortion) << '\n';
  if (result.monge_map) {
    std::cout << "monge_map";
    for (Index j : *result.monge_map) std::cout << ' ' << j;
    std::cout << '\n';
  }
  if (!opts.output.empty()) {
    io::write_file(opts.output + ".csv", render([&](std::ostream& o) {
                     io::write_coupling_csv(o, result.coupling);
                   }));
    json meta = io::solver_result_json(result);
    meta["x"] = opts.x;
    meta["y"] = opts.y;
    meta["init"] = opts.init;
    meta["seed"] = opts.seed;
    io::write_file(opts.output + ".json", dump(meta));
  }
  return kOk;
}

int run_gh(const GhOptions& opts, unsigned threads) {
  const io::DistanceTable x = io::read_distance_csv(opts.x);
  const io::DistanceTable y = io::read_distance_csv(opts.y);
  for (const auto* t : {&x, &y}) {
    const MetricValidation report = validate_metric(t->distances, false);
    if (!report.structurally_valid()) throw StructuralError(report.summary());
  }
  check_enumeration_guard(x.distances.rows(), y.distances.rows());
  check_enumeration_guard(y.distances.rows(), x.distances.rows());
  const MapSearchResult xy = srgh(x.distances, y.distances, threads);
  const MapSearchResult yx = srgh(y.distances, x.distances, threads);
  const double modified = std::max(xy.value, yx.value);
  std::cout << "srgh_xy " << io::format_short(xy.value) << '\n'
            << "srgh_yx " << io::format_short(yx.value) << '\n'
            << "mgh = " << io::format_short(modified) << '\n';
  if (!opts.output.empty()) {
    json j{{"srgh_xy", xy.value},
           {"srgh_yx", yx.value},
           {"mgh", modified},
           {"map_xy", xy.minimizer.targets},
           {"map_yx", yx.minimizer.targets}};
    io::write_file(opts.output, dump(j));
  }
  return kOk;
}

int run_synth(const SynthOptions& opts, unsigned threads) {
  if (opts.output.empty()) throw StructuralError("--out is required");
  const std::uint64_t seed = require_seed(opts.seed);
  std::string contents;
  if (opts.kind == "circle" || opts.kind == "sphere" || opts.kind == "euclidean") {
    const Manifold m = opts.kind == "circle"   ? Manifold::circle(opts.radius)
                       : opts.kind == "sphere" ? Manifold::sphere(opts.radius)
                                               : Manifold::euclidean(opts.dim, opts.radius);
    const ManifoldSample s = sample_manifold(m, opts.n, opts.noise, seed);
    contents = render([&](std::ostream& o) { io::write_distance_csv(o, s.space.distances()); });
  } else if (opts.kind == "rotated") {
    const RotatedPatternData data = rotated_pattern(opts.anchors, opts.n, seed, opts.symmetry);
    contents =
        render([&](std::ostream& o) { io::write_distance_csv(o, data.space.distances()); });
    std::ostringstream angles;
    angles << "sample,angle\n";
    for (std::size_t i = 0; i < data.angles.size(); ++i) {
      angles << i << ',' << io::format_full(data.angles[i]) << '\n';
    }
    io::write_file(opts.output + ".angles.csv", angles.str());
  } else if (opts.kind == "cities") {
    const std::vector<GeoPoint> cities = random_cities(opts.n, seed);
    std::vector<std::string> labels;
    for (int i = 0; i < opts.n; ++i) labels.push_back("city" + std::to_string(i));
    contents = render(
        [&](std::ostream& o) { io::write_distance_csv(o, geodesic_matrix(cities), labels); });
  } else if (opts.kind == "ensemble") {
    const Ensemble e = synthetic_ensemble(opts.side, opts.n, seed);
    contents = render([&](std::ostream& o) { io::write_ensemble_csv(o, e); });
  } else {
    throw StructuralError("unknown synth kind '" + opts.kind +
                          "' (circle|sphere|euclidean|rotated|cities|ensemble)");
  }
  (void)threads;
  io::write_file(opts.output, contents);
  std::cout << "wrote " << opts.output << '\n';
  return kOk;
}

int run_redistrict(const RedistrictOptions& opts, unsigned threads) {
  const std::uint64_t seed = require_seed(opts.seed);
  WithinArcAlignment mode = WithinArcAlignment::kArcFirstPlan;
  if (opts.align_mode == "ensemble") {
    mode = WithinArcAlignment::kEnsembleFirstPlan;
  } else if (opts.align_mode != "arc") {
    throw StructuralError("--align-mode must be 'arc' or 'ensemble'");
  }
  const Ensemble ensemble = io::read_ensemble_csv(opts.plans);
  EmbeddingProblem problem{
      .space = ensemble_distances(ensemble, threads),
      .manifold = Manifold::circle(1.0),
      .learn_scale = true,
      .grid_count = opts.grid,
      .jitter = opts.jitter,
      .seed = seed,
      .threads = threads,
  };
  OptimizerConfig cfg;
  cfg.learning_rate = opts.lr;
  cfg.max_steps = opts.max_steps;
  cfg.rel_threshold = opts.rel_threshold;
  cfg.patience = opts.patience;
  const EmbeddingResult result = srgw_gd(problem, cfg);
  const std::vector<double>& coords = *result.circular_coords;
  const std::vector<ArcSummary> arcs = arc_summaries(coords, ensemble, opts.arcs, mode);

  const std::filesystem::path dir(opts.output_dir);
  json manifest;
  manifest["plans"] = opts.plans;
  manifest["grid"] = opts.grid;
  manifest["seed"] = seed;
  manifest["align_mode"] = opts.align_mode;
  manifest["optimizer"] = optimizer_json(cfg);
  manifest["embedding"] = embedding_json(result);
  json arc_list = json::array();
  for (const ArcSummary& arc : arcs) {
    const std::string name = "arc_" + std::to_string(arc.arc_index) + ".csv";
    io::write_file(dir / name, render([&](std::ostream& o) {
                     io::write_arc_csv(o, arc, ensemble.unit_ids);
                   }));
    std::vector<std::string> ids;
    for (std::size_t p : arc.plan_indices) ids.push_back(ensemble.plan_ids[p]);
    arc_list.push_back({{"arc", arc.arc_index},
                        {"start", static_cast<double>(arc.arc_index) / opts.arcs},
                        {"end", static_cast<double>(arc.arc_index + 1) / opts.arcs},
                        {"file", name},
                        {"plans", ids},
                        {"first_plan", arc.first_plan ? json(ensemble.plan_ids[*arc.first_plan])
                                                      : json(nullptr)}});
  }
  manifest["arcs"] = arc_list;
  io::write_file(dir / "arcs.json", dump(manifest));
  io::write_file(dir / "embedding.csv", render([&](std::ostream& o) {
                   io::write_embedding_csv(o, result, ensemble.plan_ids);
                 }));
  io::write_file(dir / "scatter.svg", svg::circle_scatter(coords, std::nullopt, "ensemble"));
  io::write_file(dir / "histogram.csv",
                 render([&](std::ostream& o) { io::write_histogram_csv(o, coords, 20); }));
  std::cout << "plans " << ensemble.plan_count() << '\n'
            << "dis2 " << io::format_short(result.dis2) << '\n'
            << "scale " << io::format_short(result.scale) << '\n';
  return kOk;
}

int run_plot(const PlotOptions& opts, unsigned) {
  const Manifold manifold = Manifold::parse(opts.manifold);
  std::ifstream in(opts.embedding);
  if (!in) throw ParseError("cannot open '" + opts.embedding + "'", 0);
  std::string line;
  std::size_t line_no = 0;
  std::vector<ManifoldPoint> points;
  const int coords = manifold.coordinate_count();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line.rfind("id,", 0) != 0) throw ParseError("expected embedding CSV header", line_no);
      continue;
    }
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    ManifoldPoint p(coords);
    for (int c = 0; c < coords; ++c) {
      if (!std::getline(fields, cell, ',')) throw ParseError("missing coordinate", line_no);
      try {
        p(c) = std::stod(cell);
      } catch (const std::exception&) {
        throw ParseError("bad coordinate '" + cell + "'", line_no);
      }
    }
    points.push_back(std::move(p));
  }
  io::write_file(opts.output, svg::embedding_scatter(manifold, points, opts.title));
  std::cout << "wrote " << opts.output << '\n';
  return kOk;
}

}  // namespace mvmds::cli
