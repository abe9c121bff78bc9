#include "lr2sd/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <utility>
#include <vector>

namespace lr2sd::config {

using nlohmann::json;

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Typed access to one JSON object; every key must be consumed before
// finish(), otherwise the first unknown one is reported.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + " must be a JSON object");
  }

  bool has(std::string_view key) const { return node_.contains(key); }

  template <typename T>
  void read(std::string_view key, T& out) {
    const auto it = node_.find(key);
    if (it == node_.end()) return;
    seen_.insert(std::string(key));
    out = convert<T>(*it, join(path_, key));
  }

  Section child(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = node_.find(key);
    static const json empty = json::object();
    return Section(it == node_.end() ? empty : *it, join(path_, key));
  }

  const std::string& path() const { return path_; }

  void finish() const {
    for (const auto& [key, value] : node_.items())
      if (!seen_.contains(key)) throw ConfigError("unknown configuration key '" + join(path_, key) + "'");
  }

 private:
  std::string where() const { return path_.empty() ? std::string("document") : "'" + path_ + "'"; }

  template <typename T>
  static T convert(const json& v, const std::string& path);

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

[[noreturn]] void type_error(const std::string& path, const char* expected) {
  throw ConfigError("configuration key '" + path + "' must be " + expected);
}

template <>
double Section::convert<double>(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  type_error(path, "a number");
}

template <>
int Section::convert<int>(const json& v, const std::string& path) {
  if (!v.is_number_integer()) type_error(path, "an integer");
  const auto value = v.get<long long>();
  if (value < INT32_MIN || value > INT32_MAX) type_error(path, "a 32-bit integer");
  return static_cast<int>(value);
}

template <>
std::uint64_t Section::convert<std::uint64_t>(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    type_error(path, "a non-negative integer");
  return v.get<std::uint64_t>();
}

template <>
bool Section::convert<bool>(const json& v, const std::string& path) {
  if (!v.is_boolean()) type_error(path, "a boolean");
  return v.get<bool>();
}

template <>
std::string Section::convert<std::string>(const json& v, const std::string& path) {
  if (!v.is_string()) type_error(path, "a string");
  return v.get<std::string>();
}

template <>
std::vector<double> Section::convert<std::vector<double>>(const json& v, const std::string& path) {
  if (!v.is_array()) type_error(path, "an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(convert<double>(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <>
std::vector<int> Section::convert<std::vector<int>>(const json& v, const std::string& path) {
  if (!v.is_array()) type_error(path, "an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(convert<int>(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <>
std::pair<double, double> Section::convert<std::pair<double, double>>(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) type_error(path, "a two-element array");
  return {convert<double>(v[0], path + "[0]"), convert<double>(v[1], path + "[1]")};
}

template <>
json Section::convert<json>(const json& v, const std::string&) {
  return v;
}

Algorithm algorithm_from(const std::string& name, const std::string& path) {
  const auto parsed = parse_algorithm(name);
  if (!parsed) throw ConfigError("configuration key '" + path + "' names unknown algorithm '" + name + "'");
  return *parsed;
}

std::vector<Algorithm> algorithms_from(Section& section, std::string_view key, std::vector<Algorithm> fallback) {
  if (!section.has(key)) return fallback;
  std::vector<Algorithm> out;
  json dummy;
  section.read(key, dummy);
  if (!dummy.is_array()) type_error(join(section.path(), key), "an array of algorithm names");
  for (std::size_t i = 0; i < dummy.size(); ++i) {
    const std::string path = join(section.path(), key) + "[" + std::to_string(i) + "]";
    if (!dummy[i].is_string()) type_error(path, "a string");
    out.push_back(algorithm_from(dummy[i].get<std::string>(), path));
  }
  return out;
}

void parse_scene_into(Section s, SceneConfig& scene) {
  s.read("num_sensors", scene.geometry.num_sensors);
  s.read("element_spacing", scene.geometry.element_spacing);
  s.read("doas_deg", scene.doas_deg);
  s.read("num_snapshots", scene.num_snapshots);
  s.read("snr_db", scene.snr_db);
  s.read("num_distorted", scene.num_distorted);
  s.read("gain_range", scene.gain_range);
  s.read("phase_range_deg", scene.phase_range_deg);
  s.read("seed", scene.seed);
  s.finish();
}

void parse_solver_into(Section s, SolverConfig& solver, Algorithm& algorithm) {
  std::string name;
  s.read("algorithm", name);
  if (!name.empty()) algorithm = algorithm_from(name, join(s.path(), "algorithm"));
  double value = 0.0;
  if (s.has("lambda1")) {
    s.read("lambda1", value);
    solver.set_lambda1(value);
  }
  if (s.has("lambda2")) {
    s.read("lambda2", value);
    solver.set_lambda2(value);
  }

  Section irls = s.child("irls");
  irls.read("lambda", solver.irls.lambda);
  irls.read("mu", solver.irls.mu);
  irls.read("epsilon", solver.irls.epsilon);
  irls.read("k_max", solver.irls.k_max);
  irls.read("record_trace", solver.irls.record_trace);
  irls.finish();

  Section base = s.child("baseline");
  if (base.has("tau_svt")) {
    double tau = 0.0;
    base.read("tau_svt", tau);
    solver.baseline.tau_svt = tau;
  }
  base.read("step_svt", solver.baseline.step_svt);
  base.read("penalty_admm", solver.baseline.penalty_admm);
  if (base.has("step_apg")) {
    json step;
    base.read("step_apg", step);
    if (step.is_string() && step.get<std::string>() == "auto") {
      solver.baseline.step_apg.reset();
    } else if (step.is_number()) {
      solver.baseline.step_apg = step.get<double>();
    } else {
      type_error(join(base.path(), "step_apg"), "a number or \"auto\"");
    }
  }
  base.read("epsilon", solver.baseline.epsilon);
  base.read("k_max", solver.baseline.k_max);
  base.read("record_trace", solver.baseline.record_trace);
  base.finish();
  s.finish();
}

// Converts library validation failures into configuration errors.
template <typename F>
void validated(const std::string& path, F&& check) {
  try {
    check();
  } catch (const std::domain_error& e) {
    throw ConfigError("invalid '" + path + "': " + e.what());
  }
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void apply_override(json& document, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("override '" + std::string(assignment) + "' must look like key.path=value");
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &document;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
    if (!node->is_object()) throw ConfigError("override key '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = std::move(value);
      return;
    }
    json& next = (*node)[part];
    if (next.is_null()) next = json::object();
    node = &next;
    start = dot + 1;
  }
}

SceneConfig parse_scene(const json& scene, const std::string& path) {
  SceneConfig out;
  parse_scene_into(Section(scene, path), out);
  validated(path, [&] { out.validate(); });
  return out;
}

json scene_to_json(const SceneConfig& scene) {
  json j;
  j["num_sensors"] = scene.geometry.num_sensors;
  j["element_spacing"] = scene.geometry.element_spacing;
  j["doas_deg"] = scene.doas_deg;
  j["num_snapshots"] = scene.num_snapshots;
  if (scene.noiseless()) {
    j["snr_db"] = "inf";
  } else {
    j["snr_db"] = scene.snr_db;
  }
  j["num_distorted"] = scene.num_distorted;
  j["gain_range"] = {scene.gain_range.first, scene.gain_range.second};
  j["phase_range_deg"] = {scene.phase_range_deg.first, scene.phase_range_deg.second};
  j["seed"] = scene.seed;
  return j;
}

Document parse_document(const json& document) {
  Document doc;
  Section root(document, "");
  parse_scene_into(root.child("scene"), doc.scene);
  parse_solver_into(root.child("solver"), doc.solver, doc.algorithm);

  Section detection = root.child("detection");
  detection.read("h_factor", doc.h_factor);
  detection.finish();

  Section spectrum = root.child("spectrum");
  spectrum.read("start_deg", doc.grid.start_deg);
  spectrum.read("stop_deg", doc.grid.stop_deg);
  spectrum.read("step_deg", doc.grid.step_deg);
  std::string refinement = "none";
  spectrum.read("refinement", refinement);
  if (refinement == "parabolic") {
    doc.refinement = PeakRefinement::parabolic;
  } else if (refinement != "none") {
    throw ConfigError("configuration key 'spectrum.refinement' must be \"none\" or \"parabolic\"");
  }
  spectrum.finish();

  ExperimentSpec& exp = doc.experiment;
  exp.scene = doc.scene;
  exp.solver = doc.solver;
  exp.grid = doc.grid;
  exp.refinement = doc.refinement;
  exp.h_factor = doc.h_factor;
  Section experiment = root.child("experiment");
  std::string sweep_var = std::string(to_string(exp.sweep_var));
  experiment.read("sweep_var", sweep_var);
  const auto var = parse_sweep_variable(sweep_var);
  if (!var) throw ConfigError("configuration key 'experiment.sweep_var' names unknown variable '" + sweep_var + "'");
  exp.sweep_var = *var;
  experiment.read("sweep_values", exp.sweep_values);
  exp.algorithms = algorithms_from(experiment, "algorithms", exp.algorithms);
  experiment.read("num_trials", exp.num_trials);
  experiment.read("base_seed", exp.base_seed);
  experiment.read("success_threshold_deg", exp.success_threshold_deg);
  experiment.read("record_timing", exp.record_timing);
  experiment.finish();

  BenchSpec& bench = doc.bench;
  bench.scene = doc.scene;
  bench.solver = doc.solver;
  Section bench_section = root.child("bench");
  bench.algorithms = algorithms_from(bench_section, "algorithms", bench.algorithms);
  bench_section.read("snapshots", bench.snapshots);
  bench_section.read("sensors", bench.sensors);
  bench_section.read("repeats", bench.repeats);
  bench_section.read("base_seed", bench.base_seed);
  bench_section.finish();

  root.finish();

  validated("scene", [&] { doc.scene.validate(); });
  validated("solver.irls", [&] { doc.solver.irls.validate(); });
  validated("solver.baseline", [&] { doc.solver.baseline.validate(); });
  validated("spectrum", [&] { doc.grid.validate(); });
  if (!(doc.h_factor > 0.0)) throw ConfigError("invalid 'detection.h_factor': must be positive");
  return doc;
}

}  // namespace lr2sd::config
