#pragma once

// JSON description of constant-coefficient algebroids:
//   {"base_dim": n, "fiber_rank": r,
//    "anchor": [[...n rows of r...]] | "identity" | "zero" | "so3-action",
//    "structure": [[[...]]] (indexed [γ][α][β]) | "zero" | "so3"}

#include "geomech/algebroid.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>

namespace geomech {

/// Malformed or inconsistent configuration document.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

LieAlgebroid algebroid_from_json(const nlohmann::json& doc);
LieAlgebroid load_algebroid(const std::filesystem::path& path);

}  // namespace geomech
