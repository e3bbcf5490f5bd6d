#include "geomech/algebroid_io.hpp"

#include <fstream>

namespace geomech {

namespace {

int positive_field(const nlohmann::json& doc, const char* key, int min_value) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) throw ConfigError(std::string("missing integer field '") + key + "'");
  const int v = doc[key].get<int>();
  if (v < min_value) throw ConfigError(std::string("field '") + key + "' out of range");
  return v;
}

}  // namespace

LieAlgebroid algebroid_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("algebroid definition must be a JSON object");
  const int n = positive_field(doc, "base_dim", 0);
  const int r = positive_field(doc, "fiber_rank", 1);
  if (!doc.contains("anchor") || !doc.contains("structure")) throw ConfigError("algebroid needs 'anchor' and 'structure'");
  const auto& anchor = doc["anchor"];
  const auto& structure = doc["structure"];

  StructureTensor c(r);
  if (structure.is_string()) {
    const auto name = structure.get<std::string>();
    if (name == "so3") {
      if (r != 3) throw ConfigError("structure 'so3' needs fiber_rank 3");
      c = StructureTensor::levi_civita();
    } else if (name != "zero") {
      throw ConfigError("unknown builtin structure '" + name + "'");
    }
  } else if (structure.is_array()) {
    if (structure.size() != static_cast<std::size_t>(r)) throw ConfigError("structure must be r×r×r");
    for (int g = 0; g < r; ++g) {
      const auto& slab = structure[g];
      if (!slab.is_array() || slab.size() != static_cast<std::size_t>(r)) throw ConfigError("structure must be r×r×r");
      for (int a = 0; a < r; ++a) {
        const auto& row = slab[a];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(r)) throw ConfigError("structure must be r×r×r");
        for (int b = 0; b < r; ++b) {
          if (!row[b].is_number()) throw ConfigError("structure entries must be numbers");
          c(g, a, b) = row[b].get<double>();
        }
      }
    }
  } else {
    throw ConfigError("'structure' must be an array or a builtin name");
  }

  if (anchor.is_string()) {
    const auto name = anchor.get<std::string>();
    if (name == "so3-action") {
      if (n != 3 || r != 3) throw ConfigError("anchor 'so3-action' needs base_dim 3 and fiber_rank 3");
      const LieAlgebroid base = LieAlgebroid::so3_action();
      return LieAlgebroid(
          3, 3, [base](const Vector& x) { return base.anchor(x); }, [c](const Vector&) { return c; }, "so3-action");
    }
    Matrix rho;
    if (name == "identity") {
      if (n != r) throw ConfigError("anchor 'identity' needs base_dim == fiber_rank");
      rho = Matrix::Identity(n, r);
    } else if (name == "zero") {
      rho = Matrix::Zero(n, r);
    } else {
      throw ConfigError("unknown builtin anchor '" + name + "'");
    }
    return LieAlgebroid::constant(rho, c, "json");
  }
  if (!anchor.is_array() || anchor.size() != static_cast<std::size_t>(n)) throw ConfigError("anchor must be an n×r matrix");
  Matrix rho(n, r);
  for (int i = 0; i < n; ++i) {
    const auto& row = anchor[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(r)) throw ConfigError("anchor must be an n×r matrix");
    for (int a = 0; a < r; ++a) {
      if (!row[a].is_number()) throw ConfigError("anchor entries must be numbers");
      rho(i, a) = row[a].get<double>();
    }
  }
  if (n == 0) return LieAlgebroid::lie_algebra(c, "json");
  return LieAlgebroid::constant(rho, c, "json");
}

LieAlgebroid load_algebroid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return algebroid_from_json(doc);
}

}  // namespace geomech
