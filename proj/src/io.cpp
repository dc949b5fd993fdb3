#include "mvmds/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mvmds/errors.hpp"

namespace mvmds::io {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  const char* first = text.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool is_blank(const std::string& line) { return trim(line).empty(); }

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return in;
}

}  // namespace

DistanceTable parse_distance_csv(std::istream& in) {
  DistanceTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::vector<std::string> fields = split(line);
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      numeric = numeric && parse_double(fields[c], values[c]);
    }
    if (!numeric) {
      if (first) {
        table.labels = fields;
        first = false;
        continue;
      }
      throw ParseError("non-numeric distance entry", line_no);
    }
    first = false;
    const std::size_t width = rows.empty() ? (table.labels.empty() ? values.size()
                                                                    : table.labels.size())
                                           : rows.front().size();
    if (values.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(values.size()),
                       line_no);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("no distance rows", line_no);
  const std::size_t n = rows.size();
  if (rows.front().size() != n) {
    throw ParseError("distance matrix is " + std::to_string(n) + "x" +
                         std::to_string(rows.front().size()) + ", not square",
                     line_no);
  }
  table.distances.resize(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table.distances(i, j) = rows[i][j];
  return table;
}

DistanceTable read_distance_csv(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  return parse_distance_csv(in);
}

Vector parse_weights(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    double w = 0.0;
    if (!parse_double(trim(line), w)) throw ParseError("bad weight", line_no);
    values.push_back(w);
  }
  Vector out(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Index>(i)) = values[i];
  return out;
}

Vector read_weights(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  return parse_weights(in);
}

Ensemble parse_ensemble_csv(std::istream& in) {
  Ensemble ensemble;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::vector<std::string> fields = split(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (ensemble.plans.empty()) {
      if (fields.size() == header.size()) {
        ensemble.unit_ids.assign(header.begin() + 1, header.end());
      } else if (fields.size() == header.size() + 1) {
        ensemble.unit_ids = header;
      } else {
        throw ParseError("plan row width does not match the header", line_no);
      }
    }
    if (fields.size() != ensemble.unit_ids.size() + 1) {
      throw ParseError("expected " + std::to_string(ensemble.unit_ids.size() + 1) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    Plan plan;
    plan.reserve(ensemble.unit_ids.size());
    for (std::size_t c = 1; c < fields.size(); ++c) {
      if (fields[c] == "1") {
        plan.push_back(1);
      } else if (fields[c] == "2") {
        plan.push_back(2);
      } else {
        throw ParseError("district label '" + fields[c] + "' is not 1 or 2", line_no);
      }
    }
    if (std::find(plan.begin(), plan.end(), 1) == plan.end() ||
        std::find(plan.begin(), plan.end(), 2) == plan.end()) {
      throw ParseError("plan leaves a district empty", line_no);
    }
    ensemble.plan_ids.push_back(fields.front());
    ensemble.plans.push_back(std::move(plan));
  }
  if (ensemble.plans.empty()) throw ParseError("ensemble has no plan rows", line_no);
  return ensemble;
}

Ensemble read_ensemble_csv(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  return parse_ensemble_csv(in);
}

std::string format_full(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_short(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_distance_csv(std::ostream& out, const Matrix& d,
                        const std::vector<std::string>& labels) {
  if (!labels.empty()) {
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
    out << '\n';
  }
  for (Index i = 0; i < d.rows(); ++i) {
    for (Index j = 0; j < d.cols(); ++j) out << (j ? "," : "") << format_full(d(i, j));
    out << '\n';
  }
}

void write_ensemble_csv(std::ostream& out, const Ensemble& ensemble) {
  out << "plan_id";
  for (const auto& u : ensemble.unit_ids) out << ',' << u;
  out << '\n';
  for (std::size_t p = 0; p < ensemble.plans.size(); ++p) {
    out << (p < ensemble.plan_ids.size() ? ensemble.plan_ids[p] : std::to_string(p));
    for (int label : ensemble.plans[p]) out << ',' << label;
    out << '\n';
  }
}

void write_embedding_csv(std::ostream& out, const EmbeddingResult& result,
                         const std::vector<std::string>& labels) {
  const Index coords = result.points.empty() ? 0 : result.points.front().size();
  out << "id";
  for (Index c = 0; c < coords; ++c) out << ",coord_" << c;
  if (result.circular_coords) out << ",circular_coordinate";
  out << ",scale\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    out << (i < labels.size() ? labels[i] : std::to_string(i));
    for (Index c = 0; c < coords; ++c) out << ',' << format_full(result.points[i](c));
    if (result.circular_coords) out << ',' << format_full((*result.circular_coords)[i]);
    out << ',' << format_full(result.scale) << '\n';
  }
}

void write_coupling_csv(std::ostream& out, const SemiCoupling& coupling) {
  write_distance_csv(out, coupling.plan());
}

nlohmann::json solver_result_json(const SolverResult& result) {
  nlohmann::json j;
  j["distortion"] = result.distortion;
  j["unrounded_distortion"] = result.unrounded_distortion;
  j["iterations"] = result.iterations;
  j["seeded_start"] = result.seeded_start ? nlohmann::json(*result.seeded_start)
                                          : nlohmann::json(nullptr);
  j["objective_trace"] = result.objective_trace;
  j["rows"] = result.coupling.rows();
  j["cols"] = result.coupling.cols();
  if (result.monge_map) {
    j["monge_map"] = *result.monge_map;
  } else {
    j["monge_map"] = nullptr;
  }
  return j;
}

std::vector<int> histogram(const std::vector<double>& coords, int bins) {
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  std::vector<int> counts(bins, 0);
  for (double c : coords) {
    if (!(c >= 0.0 && c < 1.0)) throw DomainError("coordinate outside [0,1)");
    counts[std::min(bins - 1, static_cast<int>(c * bins))] += 1;
  }
  return counts;
}

void write_histogram_csv(std::ostream& out, const std::vector<double>& coords, int bins) {
  const std::vector<int> counts = histogram(coords, bins);
  out << "bin_start,bin_end,count\n";
  for (int b = 0; b < bins; ++b) {
    out << format_full(static_cast<double>(b) / bins) << ','
        << format_full(static_cast<double>(b + 1) / bins) << ',' << counts[b] << '\n';
  }
}

void write_arc_csv(std::ostream& out, const ArcSummary& arc,
                   const std::vector<std::string>& unit_ids) {
  out << "unit_id,fraction\n";
  if (!arc.fractions) return;
  for (std::size_t u = 0; u < unit_ids.size(); ++u) {
    out << unit_ids[u] << ',' << format_full((*arc.fractions)[u]) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace mvmds::io
