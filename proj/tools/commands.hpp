#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace mvmds::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kCapacityError = 3,
  kNumericalError = 4,
};

struct EmbedOptions {
  std::string input;
  std::string weights;
  std::string manifold = "circle:r=1";
  bool learn_scale = false;
  int grid = 100;
  double jitter = 0.1;
  double lr = 0.01;
  int max_steps = 10000;
  double rel_threshold = 1e-3;
  int patience = 20;
  std::optional<std::uint64_t> seed;
  std::string output = "emb";
  int gd_trials = 0;
};

struct SrgwOptions {
  std::string x;
  std::string y;
  std::string x_weights;
  int max_iterations = 1000;
  double tolerance = 1e-9;
  std::string init = "product";
  std::uint64_t seed = 0;
  std::string output;
};

struct GhOptions {
  std::string x;
  std::string y;
  std::string output;
};

struct SynthOptions {
  std::string kind;
  int n = 50;
  double radius = 1.0;
  int dim = 2;
  double noise = 0.0;
  int anchors = 10;
  int symmetry = 1;
  int side = 10;
  std::optional<std::uint64_t> seed;
  std::string output;
};

struct RedistrictOptions {
  std::string plans;
  int grid = 1000;
  double jitter = 0.1;
  double lr = 0.01;
  int max_steps = 10000;
  double rel_threshold = 1e-3;
  int patience = 20;
  int arcs = 8;
  std::string align_mode = "arc";
  std::optional<std::uint64_t> seed;
  std::string output_dir = "redistrict_out";
};

struct PlotOptions {
  std::string embedding;
  std::string manifold = "circle:r=1";
  std::string output = "plot.svg";
  std::string title;
};

int run_embed(const EmbedOptions& opts, unsigned threads);
int run_srgw(const SrgwOptions& opts, unsigned threads);
int run_gh(const GhOptions& opts, unsigned threads);
int run_synth(const SynthOptions& opts, unsigned threads);
int run_redistrict(const RedistrictOptions& opts, unsigned threads);
int run_plot(const PlotOptions& opts, unsigned threads);

// Maps library exceptions to exit codes and prints the message to stderr.
int guarded(const std::function<int()>& fn);

}  // namespace mvmds::cli
