#include <doctest.h>

#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "lr2sd/config.hpp"
#include "lr2sd/matrix_io.hpp"
#include "test_support.hpp"

using namespace lr2sd;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "lr2sd_io_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config_error_message(const json& doc) {
  try {
    config::parse_document(doc);
  } catch (const config::ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("number formatting round-trips exactly") {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double x = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-30.0, 30.0));
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
  CHECK(parse_double(" 1e-3\r") == 1e-3);
  CHECK_THROWS_AS(parse_double("1,5"), std::runtime_error);
  CHECK_THROWS_AS(parse_double(""), std::runtime_error);
}

TEST_CASE("number formatting ignores the C locale") {
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") || std::setlocale(LC_NUMERIC, "fr_FR.UTF-8")) {
    CHECK(format_double(1.25) == "1.25");
    CHECK(parse_double("1.25") == 1.25);
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("complex matrices round-trip through paired CSV files") {
  const fs::path dir = scratch_dir("roundtrip");
  Rng rng(2);
  const CMatrix X = testing::random_matrix(rng, 4, 7, 1e3);
  write_complex_csv(dir / "X", X);
  CHECK(fs::exists(dir / "X_re.csv"));
  CHECK(fs::exists(dir / "X_im.csv"));
  CHECK(read_complex_csv(dir / "X") == X);

  std::ifstream in(dir / "X_re.csv");
  std::string first;
  std::getline(in, first);
  CHECK(std::count(first.begin(), first.end(), ',') == 6);
}

TEST_CASE("malformed matrix files are rejected") {
  const fs::path dir = scratch_dir("malformed");
  std::ofstream(dir / "R_re.csv") << "1,2\n3\n";
  std::ofstream(dir / "R_im.csv") << "0,0\n0,0\n";
  CHECK_THROWS_AS(read_complex_csv(dir / "R"), std::runtime_error);
  std::ofstream(dir / "S_re.csv") << "1,2\n";
  std::ofstream(dir / "S_im.csv") << "1,2,3\n";
  CHECK_THROWS_AS(read_complex_csv(dir / "S"), std::runtime_error);
  CHECK_THROWS_AS(read_complex_csv(dir / "missing"), std::runtime_error);
}

TEST_CASE("empty document yields defaults") {
  const config::Document doc = config::parse_document(json::object());
  CHECK(doc.scene.geometry.num_sensors == 10);
  CHECK(doc.scene.num_snapshots == 100);
  CHECK(doc.solver.irls.lambda1 == 2.0);
  CHECK(doc.solver.irls.lambda2 == 0.2);
  CHECK(doc.solver.irls.mu == 0.01);
  CHECK(doc.algorithm == Algorithm::irls);
  CHECK(doc.h_factor == 10.0);
  CHECK(doc.grid.step_deg == 0.05);
}

TEST_CASE("document fields reach every section") {
  const json doc = json::parse(R"({
    "scene": {"num_sensors": 8, "doas_deg": [-5, 20], "snr_db": "inf", "num_distorted": 2, "seed": 9},
    "solver": {"algorithm": "admm", "lambda1": 1.5, "irls": {"mu": 0.001, "k_max": 50},
               "baseline": {"tau_svt": 12, "step_apg": "auto", "penalty_admm": 2}},
    "detection": {"h_factor": 4},
    "spectrum": {"step_deg": 0.1, "refinement": "parabolic"},
    "experiment": {"sweep_var": "num_snapshots", "sweep_values": [50, 100], "algorithms": ["irls", "music_raw"],
                   "num_trials": 7, "base_seed": 3, "record_timing": false},
    "bench": {"snapshots": [100], "sensors": [8, 12], "repeats": 2}
  })");
  const config::Document d = config::parse_document(doc);
  CHECK(d.scene.geometry.num_sensors == 8);
  CHECK(d.scene.noiseless());
  CHECK(d.scene.seed == 9);
  CHECK(d.algorithm == Algorithm::admm);
  CHECK(d.solver.irls.lambda1 == 1.5);
  CHECK(d.solver.baseline.lambda1 == 1.5);
  CHECK(d.solver.irls.mu == 0.001);
  CHECK(d.solver.baseline.tau_svt == 12.0);
  CHECK_FALSE(d.solver.baseline.step_apg.has_value());
  CHECK(d.h_factor == 4.0);
  CHECK(d.refinement == PeakRefinement::parabolic);
  CHECK(d.experiment.sweep_var == SweepVariable::num_snapshots);
  CHECK(d.experiment.algorithms == std::vector<Algorithm>{Algorithm::irls, Algorithm::music_raw});
  CHECK(d.experiment.num_trials == 7);
  CHECK_FALSE(d.experiment.record_timing);
  CHECK(d.experiment.scene.geometry.num_sensors == 8);
  CHECK(d.experiment.h_factor == 4.0);
  CHECK(d.experiment.grid.step_deg == 0.1);
  CHECK(d.bench.sensors == std::vector<int>{8, 12});
  CHECK(d.bench.solver.irls.mu == 0.001);
}

TEST_CASE("unknown keys name their dotted path") {
  CHECK(config_error_message(json::parse(R"({"scene": {"num_sensor": 4}})")).find("'scene.num_sensor'") !=
        std::string::npos);
  CHECK(config_error_message(json::parse(R"({"solver": {"irls": {"eps": 1}}})")).find("'solver.irls.eps'") !=
        std::string::npos);
  CHECK(config_error_message(json::parse(R"({"plots": {}})")).find("'plots'") != std::string::npos);
}

TEST_CASE("invalid values are configuration errors") {
  for (const char* text : {R"({"scene": {"num_sensors": "ten"}})", R"({"scene": {"num_sensors": 1}})",
                           R"({"solver": {"algorithm": "fista"}})", R"({"solver": {"irls": {"mu": 0}}})",
                           R"({"spectrum": {"refinement": "cubic"}})", R"({"experiment": {"sweep_var": "x"}})",
                           R"({"detection": {"h_factor": -1}})", R"({"scene": {"seed": -4}})",
                           R"({"solver": {"baseline": {"step_apg": "big"}}})", R"({"scene": 3})"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(config::parse_document(json::parse(text)), config::ConfigError);
  }
}

TEST_CASE("dotted overrides") {
  json doc = json::object();
  config::apply_override(doc, "scene.snr_db=10");
  config::apply_override(doc, "solver.algorithm=apg");
  config::apply_override(doc, "experiment.sweep_values=[0,5]");
  config::apply_override(doc, "scene.num_snapshots=50");
  CHECK(doc["scene"]["snr_db"] == 10);
  CHECK(doc["solver"]["algorithm"] == "apg");
  CHECK(doc["experiment"]["sweep_values"].size() == 2);
  const config::Document d = config::parse_document(doc);
  CHECK(d.scene.snr_db == 10.0);
  CHECK(d.scene.num_snapshots == 50);
  CHECK(d.algorithm == Algorithm::apg);
  CHECK_THROWS_AS(config::apply_override(doc, "novalue"), config::ConfigError);
  CHECK_THROWS_AS(config::apply_override(doc, "scene..x=1"), config::ConfigError);
  CHECK_THROWS_AS(config::apply_override(doc, "scene.snr_db.x=1"), config::ConfigError);
}

TEST_CASE("scene JSON round-trip") {
  SceneConfig s;
  s.snr_db = SceneConfig::kNoiseless;
  s.seed = 123456789012345ull;
  s.doas_deg = {-3.5, 7.25};
  const SceneConfig back = config::parse_scene(config::scene_to_json(s));
  CHECK(back.noiseless());
  CHECK(back.seed == s.seed);
  CHECK(back.doas_deg == s.doas_deg);
  s.snr_db = 3.0;
  CHECK(config::parse_scene(config::scene_to_json(s)).snr_db == 3.0);
}

TEST_CASE("configuration files") {
  const fs::path dir = scratch_dir("files");
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(config::load_json(dir / "bad.json"), config::ConfigError);
  CHECK_THROWS_AS(config::load_json(dir / "absent.json"), config::ConfigError);
  std::ofstream(dir / "ok.json") << R"({"scene": {"seed": 1}})";
  CHECK(config::load_json(dir / "ok.json")["scene"]["seed"] == 1);
}
