#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lr2sd/bench.hpp"
#include "lr2sd/detect.hpp"
#include "lr2sd/doa.hpp"
#include "lr2sd/monte_carlo.hpp"

namespace lr2sd::config {

// Malformed configuration: unknown key, wrong type or invalid value. The
// message names the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a CLI run can be configured with. Sections absent from the
/// JSON document keep their defaults; see docs/config.md for the schema.
struct Document {
  SceneConfig scene;
  SolverConfig solver;
  Algorithm algorithm = Algorithm::irls;
  double h_factor = 10.0;
  GridParams grid;
  PeakRefinement refinement = PeakRefinement::none;
  ExperimentSpec experiment;  // scene/solver/grid fields mirror the above
  BenchSpec bench;
};

nlohmann::json load_json(const std::filesystem::path& path);

/// Applies "a.b.c=value". The value is read as JSON when it parses as
/// JSON, otherwise as a plain string. Intermediate objects are created.
void apply_override(nlohmann::json& document, std::string_view assignment);

Document parse_document(const nlohmann::json& document);

SceneConfig parse_scene(const nlohmann::json& scene, const std::string& path = "scene");
nlohmann::json scene_to_json(const SceneConfig& scene);

}  // namespace lr2sd::config
