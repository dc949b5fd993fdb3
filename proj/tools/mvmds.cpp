#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

unsigned threads_from_env() {
  const char* env = std::getenv("MVMDS_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const long n = std::stol(env);
    if (n >= 1) return static_cast<unsigned>(n);
  } catch (const std::exception&) {
  }
  std::cerr << "warning: ignoring MVMDS_THREADS='" << env << "'\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mvmds::cli;

  CLI::App app{"Manifold-valued multidimensional scaling via semi-relaxed Gromov-Wasserstein"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: MVMDS_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  EmbedOptions embed;
  std::uint64_t embed_seed = 0;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a distance matrix with SRGW+GD");
  embed_cmd->add_option("--input", embed.input, "Distance matrix CSV")->required();
  embed_cmd->add_option("--weights", embed.weights, "Point weights, one per line");
  embed_cmd->add_option("--manifold", embed.manifold, "circle:r=R | sphere:r=R | euclidean:d=D")
      ->capture_default_str();
  embed_cmd->add_flag("--learn-scale", embed.learn_scale, "Optimize the manifold radius");
  embed_cmd->add_option("--grid", embed.grid, "Grid size")->capture_default_str();
  embed_cmd->add_option("--jitter", embed.jitter, "Grid jitter, fraction of spacing")
      ->capture_default_str();
  embed_cmd->add_option("--lr", embed.lr, "Adam learning rate")->capture_default_str();
  embed_cmd->add_option("--max-steps", embed.max_steps)->capture_default_str();
  embed_cmd->add_option("--rel-threshold", embed.rel_threshold)->capture_default_str();
  embed_cmd->add_option("--patience", embed.patience, "Steps over which convergence is judged")
      ->capture_default_str();
  auto* embed_seed_opt = embed_cmd->add_option("--seed", embed_seed)->required();
  embed_cmd->add_option("--out", embed.output, "Output prefix")->capture_default_str();
  embed_cmd->add_option("--gd-trials", embed.gd_trials,
                        "Also run this many random-init GD baselines")
      ->capture_default_str();

  SrgwOptions srgw;
  auto* srgw_cmd = app.add_subcommand("srgw", "Solve srGW(p=2) from X into Y");
  srgw_cmd->add_option("--x", srgw.x)->required();
  srgw_cmd->add_option("--y", srgw.y)->required();
  srgw_cmd->add_option("--x-weights", srgw.x_weights);
  srgw_cmd->add_option("--max-iter", srgw.max_iterations)->capture_default_str();
  srgw_cmd->add_option("--tol", srgw.tolerance)->capture_default_str();
  srgw_cmd->add_option("--init", srgw.init, "product | random")->capture_default_str();
  srgw_cmd->add_option("--seed", srgw.seed)->capture_default_str();
  srgw_cmd->add_option("--out", srgw.output, "Output prefix for coupling CSV and JSON");

  GhOptions gh;
  auto* gh_cmd = app.add_subcommand("gh", "Exact srGH and modified GH by enumeration");
  gh_cmd->add_option("--x", gh.x)->required();
  gh_cmd->add_option("--y", gh.y)->required();
  gh_cmd->add_option("--out", gh.output, "JSON output path");

  SynthOptions synth;
  std::uint64_t synth_seed = 0;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic datasets");
  synth_cmd->add_option("kind", synth.kind,
                        "circle | sphere | euclidean | rotated | cities | ensemble")
      ->required();
  synth_cmd->add_option("--n", synth.n, "Points, samples, cities or plans")->capture_default_str();
  synth_cmd->add_option("--radius", synth.radius)->capture_default_str();
  synth_cmd->add_option("--dim", synth.dim)->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise)->capture_default_str();
  synth_cmd->add_option("--anchors", synth.anchors)->capture_default_str();
  synth_cmd->add_option("--symmetry", synth.symmetry)->capture_default_str();
  synth_cmd->add_option("--side", synth.side)->capture_default_str();
  auto* synth_seed_opt = synth_cmd->add_option("--seed", synth_seed)->required();
  synth_cmd->add_option("--out", synth.output)->required();

  RedistrictOptions red;
  std::uint64_t red_seed = 0;
  auto* red_cmd = app.add_subcommand("redistrict", "Circular embedding of a plan ensemble");
  red_cmd->add_option("--plans", red.plans)->required();
  red_cmd->add_option("--grid", red.grid)->capture_default_str();
  red_cmd->add_option("--jitter", red.jitter)->capture_default_str();
  red_cmd->add_option("--lr", red.lr)->capture_default_str();
  red_cmd->add_option("--max-steps", red.max_steps)->capture_default_str();
  red_cmd->add_option("--rel-threshold", red.rel_threshold)->capture_default_str();
  red_cmd->add_option("--patience", red.patience)->capture_default_str();
  red_cmd->add_option("--arcs", red.arcs)->capture_default_str();
  red_cmd->add_option("--align", red.align_mode, "arc | ensemble")->capture_default_str();
  auto* red_seed_opt = red_cmd->add_option("--seed", red_seed)->required();
  red_cmd->add_option("--out", red.output_dir)->capture_default_str();

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render an embedding CSV as SVG");
  plot_cmd->add_option("--embedding", plot.embedding)->required();
  plot_cmd->add_option("--manifold", plot.manifold)->capture_default_str();
  plot_cmd->add_option("--out", plot.output)->capture_default_str();
  plot_cmd->add_option("--title", plot.title);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (threads == 0) threads = threads_from_env();
  if (*embed_seed_opt) embed.seed = embed_seed;
  if (*synth_seed_opt) synth.seed = synth_seed;
  if (*red_seed_opt) red.seed = red_seed;

  if (*embed_cmd) return guarded([&] { return run_embed(embed, threads); });
  if (*srgw_cmd) return guarded([&] { return run_srgw(srgw, threads); });
  if (*gh_cmd) return guarded([&] { return run_gh(gh, threads); });
  if (*synth_cmd) return guarded([&] { return run_synth(synth, threads); });
  if (*red_cmd) return guarded([&] { return run_redistrict(red, threads); });
  return guarded([&] { return run_plot(plot, threads); });
}
