#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvmds/embed.hpp"
#include "mvmds/redistrict.hpp"
#include "mvmds/srgw.hpp"
#include "mvmds/types.hpp"

namespace mvmds::io {

// Square distance matrix, optionally preceded by a header row of labels.
struct DistanceTable {
  Matrix distances;
  std::vector<std::string> labels;
};

// All parsers throw ParseError carrying the 1-based line number.
DistanceTable parse_distance_csv(std::istream& in);
DistanceTable read_distance_csv(const std::filesystem::path& path);

// One weight per line; blank lines ignored.
Vector parse_weights(std::istream& in);
Vector read_weights(const std::filesystem::path& path);

// Header row of unit ids (optionally led by a plan-id column name), then one
// row per plan: plan_id followed by one label per unit.
Ensemble parse_ensemble_csv(std::istream& in);
Ensemble read_ensemble_csv(const std::filesystem::path& path);

// Shortest representation that round-trips the double.
std::string format_full(double value);
// Six significant digits, used for console output.
std::string format_short(double value);

void write_distance_csv(std::ostream& out, const Matrix& d,
                        const std::vector<std::string>& labels = {});
void write_ensemble_csv(std::ostream& out, const Ensemble& ensemble);

// id, coord_0.., [circular_coordinate,] scale
void write_embedding_csv(std::ostream& out, const EmbeddingResult& result,
                         const std::vector<std::string>& labels);

void write_coupling_csv(std::ostream& out, const SemiCoupling& coupling);
nlohmann::json solver_result_json(const SolverResult& result);

// Counts of coordinates in `bins` equal bins over [0, 1).
std::vector<int> histogram(const std::vector<double>& coords, int bins = 20);
void write_histogram_csv(std::ostream& out, const std::vector<double>& coords,
                         int bins = 20);

// unit_id, fraction
void write_arc_csv(std::ostream& out, const ArcSummary& arc,
                   const std::vector<std::string>& unit_ids);

// Writes `contents` to `path`, creating parent directories. Throws
// std::runtime_error if the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace mvmds::io
