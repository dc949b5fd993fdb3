#include "mvmds/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace mvmds::svg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Blue-to-red ramp for t in [0,1].
std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(40 + 200 * t));
  const int g = static_cast<int>(std::lround(80 + 60 * (1.0 - std::abs(2.0 * t - 1.0))));
  const int b = static_cast<int>(std::lround(240 - 200 * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void open(std::ostringstream& out, int width, int height, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << escape(title) << "</text>\n";
  }
}

void dot(std::ostringstream& out, double x, double y, const std::string& fill) {
  out << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y)
      << "\" r=\"3\" fill=\"" << fill << "\" fill-opacity=\"0.8\"/>\n";
}

}  // namespace

std::string circle_scatter(const std::vector<double>& coords,
                           const std::optional<std::vector<double>>& values,
                           const std::string& title) {
  std::ostringstream out;
  const double cx = 200.0, cy = 210.0, radius = 160.0;
  open(out, 400, 400, title);
  out << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy) << "\" r=\"" << fixed(radius)
      << "\" fill=\"none\" stroke=\"#999999\"/>\n";
  double lo = 0.0, hi = 1.0;
  if (values && !values->empty()) {
    lo = *std::min_element(values->begin(), values->end());
    hi = *std::max_element(values->begin(), values->end());
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double angle = kTwoPi * coords[i];
    double t = coords[i];
    if (values) t = hi > lo ? ((*values)[i] - lo) / (hi - lo) : 0.0;
    // counter-clockwise from (1,0); SVG y grows downward
    dot(out, cx + radius * std::cos(angle), cy - radius * std::sin(angle), colour(t));
  }
  out << "</svg>\n";
  return out.str();
}

std::string sphere_scatter(const std::vector<ManifoldPoint>& points, const std::string& title) {
  std::ostringstream out;
  const double radius = 150.0, cy = 210.0;
  const double centres[2] = {180.0, 520.0};
  open(out, 700, 400, title);
  for (double cx : centres) {
    out << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy) << "\" r=\""
        << fixed(radius) << "\" fill=\"none\" stroke=\"#999999\"/>\n";
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const bool north = p(2) >= 0.0;
    const double cx = centres[north ? 0 : 1];
    const double x = north ? p(0) : -p(0);
    const double t = points.size() > 1 ? static_cast<double>(i) / (points.size() - 1) : 0.0;
    dot(out, cx + radius * x, cy - radius * p(1), colour(t));
  }
  out << "</svg>\n";
  return out.str();
}

std::string planar_scatter(const std::vector<ManifoldPoint>& points, const std::string& title) {
  std::ostringstream out;
  open(out, 400, 400, title);
  double extent = 1e-12;
  for (const auto& p : points) {
    extent = std::max(extent, std::abs(p(0)));
    if (p.size() > 1) extent = std::max(extent, std::abs(p(1)));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const double y = p.size() > 1 ? p(1) : 0.0;
    const double t = points.size() > 1 ? static_cast<double>(i) / (points.size() - 1) : 0.0;
    dot(out, 200.0 + 160.0 * p(0) / extent, 210.0 - 160.0 * y / extent, colour(t));
  }
  out << "</svg>\n";
  return out.str();
}

std::string embedding_scatter(const Manifold& manifold,
                              const std::vector<ManifoldPoint>& points,
                              const std::string& title) {
  switch (manifold.type()) {
    case ManifoldType::kCircle: {
      std::vector<double> coords;
      coords.reserve(points.size());
      for (const auto& p : points) coords.push_back(p(0) / kTwoPi);
      return circle_scatter(coords, std::nullopt, title);
    }
    case ManifoldType::kSphere:
      return sphere_scatter(points, title);
    case ManifoldType::kEuclidean:
      return planar_scatter(points, title);
  }
  return {};
}

}  // namespace mvmds::svg
