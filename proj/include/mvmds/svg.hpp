#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvmds/manifold.hpp"

namespace mvmds::svg {

// Points on a unit circle at the given circular coordinates, coloured by
// `values` (normalized to [0,1]) when provided, otherwise by coordinate.
std::string circle_scatter(const std::vector<double>& coords,
                           const std::optional<std::vector<double>>& values = std::nullopt,
                           const std::string& title = "");

// Orthographic views of both hemispheres (z >= 0 left, z < 0 right).
std::string sphere_scatter(const std::vector<ManifoldPoint>& points,
                           const std::string& title = "");

// First two coordinates, scaled to fit.
std::string planar_scatter(const std::vector<ManifoldPoint>& points,
                           const std::string& title = "");

// Dispatches on the manifold type.
std::string embedding_scatter(const Manifold& manifold,
                              const std::vector<ManifoldPoint>& points,
                              const std::string& title = "");

}  // namespace mvmds::svg
