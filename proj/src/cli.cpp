#include "lr2sd/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lr2sd/bench.hpp"
#include "lr2sd/config.hpp"
#include "lr2sd/detect.hpp"
#include "lr2sd/doa.hpp"
#include "lr2sd/matrix_io.hpp"
#include "lr2sd/monte_carlo.hpp"
#include "lr2sd/prox.hpp"

namespace lr2sd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> overrides;
  std::string workers = "1";
  std::string scene_dir;
};

config::Document load_document(const Options& opts) {
  json doc = config::load_json(opts.config_path);
  for (const auto& assignment : opts.overrides) config::apply_override(doc, assignment);
  return config::parse_document(doc);
}

fs::path prepare_output(const Options& opts) {
  fs::path dir = opts.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    dir = env && *env ? fs::path(env) : fs::path(".");
  }
  fs::create_directories(dir);
  return dir;
}

int parse_workers(const std::string& text) {
  if (text == "auto") return 0;
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used == text.size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw config::ConfigError("--workers must be a positive integer or 'auto'");
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& value) { open_output(path) << value.dump(2) << '\n'; }

// Observation and its scene parameters, either from a synth bundle or
// freshly synthesized from the configuration.
struct Observation {
  CMatrix Y;
  SceneConfig scene;
  std::vector<int> distorted_set;
};

Observation load_observation(const Options& opts, const config::Document& doc) {
  if (opts.scene_dir.empty()) {
    Scene scene = synthesize_scene(doc.scene);
    return {std::move(scene.Y), doc.scene, std::move(scene.distorted_set)};
  }
  const fs::path dir = opts.scene_dir;
  const json sidecar = config::load_json(dir / "scene.json");
  if (!sidecar.contains("config")) throw config::ConfigError("scene.json lacks a 'config' object");
  Observation obs{read_complex_csv(dir / "Y"), config::parse_scene(sidecar.at("config"), "config"), {}};
  if (sidecar.contains("distorted_set")) obs.distorted_set = sidecar.at("distorted_set").get<std::vector<int>>();
  if (obs.Y.rows() != obs.scene.geometry.num_sensors || obs.Y.cols() != obs.scene.num_snapshots)
    throw config::ConfigError("Y in " + dir.string() + " does not match the shape recorded in scene.json");
  return obs;
}

int cmd_synth(const Options& opts) {
  const config::Document doc = load_document(opts);
  const fs::path dir = prepare_output(opts);
  const Scene scene = synthesize_scene(doc.scene);
  write_complex_csv(dir / "Y", scene.Y);
  json sidecar;
  sidecar["config"] = config::scene_to_json(doc.scene);
  sidecar["distorted_set"] = scene.distorted_set;
  std::vector<double> re, im;
  for (Eigen::Index m = 0; m < scene.gamma.size(); ++m) {
    re.push_back(scene.gamma(m).real());
    im.push_back(scene.gamma(m).imag());
  }
  sidecar["gamma_re"] = re;
  sidecar["gamma_im"] = im;
  write_json(dir / "scene.json", sidecar);
  return kExitOk;
}

int cmd_solve(const Options& opts) {
  const config::Document doc = load_document(opts);
  const Observation obs = load_observation(opts, doc);
  const fs::path dir = prepare_output(opts);
  const SolveResult result = run_solver(doc.algorithm, obs.Y, doc.solver);
  const int K = static_cast<int>(obs.scene.doas_deg.size());

  write_complex_csv(dir / "Z_hat", result.Z_hat);
  write_complex_csv(dir / "V_hat", result.V_hat);

  auto trace = open_output(dir / "trace.csv");
  trace << "iteration,objective\n";
  const bool full = result.objective_trace.size() == static_cast<std::size_t>(result.iterations) + 1;
  for (std::size_t i = 0; i < result.objective_trace.size(); ++i) {
    const std::size_t iteration = full || i == 0 ? i : static_cast<std::size_t>(result.iterations);
    trace << iteration << ',' << format_double(result.objective_trace[i]) << '\n';
  }

  const SpectrumGrid spectrum = music_spectrum(result.Z_hat, K, doc.grid, obs.scene.geometry);
  const std::vector<double> doas = estimate_doas(spectrum, K, doc.refinement);
  auto doa_out = open_output(dir / "doas.csv");
  doa_out << "k,doa_deg\n";
  for (std::size_t k = 0; k < doas.size(); ++k) doa_out << k + 1 << ',' << format_double(doas[k]) << '\n';

  if (obs.scene.geometry.num_sensors >= 3) {
    const DetectionResult detection = detect_distorted(result.V_hat, doc.h_factor);
    std::vector<double> norms(detection.row_norms.data(), detection.row_norms.data() + detection.row_norms.size());
    write_json(dir / "detection.json", json{{"m_fail", detection.m_fail},
                                            {"distorted_indices", detection.distorted_indices},
                                            {"row_norms", norms},
                                            {"threshold_used", detection.threshold_used}});
  }

  const double l1 = doc.solver.baseline.lambda1, l2 = doc.solver.baseline.lambda2;
  write_json(dir / "solve.json",
             json{{"algorithm", std::string(to_string(doc.algorithm))},
                  {"iterations", result.iterations},
                  {"termination", to_string(result.termination)},
                  {"wall_time_s", result.wall_time_s},
                  {"objective", composite_objective(obs.Y, result.Z_hat, result.V_hat, l1, l2)}});
  return kExitOk;
}

int cmd_sweep(const Options& opts) {
  const config::Document doc = load_document(opts);
  const int workers = parse_workers(opts.workers);
  MetricsTable table;
  try {
    table = run_monte_carlo(doc.experiment, workers);
  } catch (const std::domain_error& e) {
    throw config::ConfigError(std::string("invalid 'experiment': ") + e.what());
  }
  const fs::path dir = prepare_output(opts);
  auto out = open_output(dir / "metrics.csv");
  write_metrics_csv(table, out);
  return kExitOk;
}

int cmd_bench(const Options& opts) {
  const config::Document doc = load_document(opts);
  std::vector<TimingRow> rows;
  try {
    rows = run_bench(doc.bench);
  } catch (const std::domain_error& e) {
    throw config::ConfigError(std::string("invalid 'bench': ") + e.what());
  }
  const fs::path dir = prepare_output(opts);
  auto out = open_output(dir / "timing.csv");
  write_timing_csv(rows, out);
  return kExitOk;
}

int cmd_spectrum(const Options& opts) {
  const config::Document doc = load_document(opts);
  const Observation obs = load_observation(opts, doc);
  const fs::path dir = prepare_output(opts);
  const SolveResult result = run_solver(doc.algorithm, obs.Y, doc.solver);
  const int K = static_cast<int>(obs.scene.doas_deg.size());
  const SpectrumGrid spectrum = music_spectrum(result.Z_hat, K, doc.grid, obs.scene.geometry);
  auto out = open_output(dir / "spectrum.csv");
  out << "angle_deg,value\n";
  for (const SpectrumPoint& p : spectrum.values) out << format_double(p.angle_deg) << ',' << format_double(p.value) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-rank plus row-sparse decomposition for DOA estimation and distorted-sensor detection"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opts.config_path, "JSON configuration document")->required();
    sub->add_option("-o,--out", opts.output_dir, std::string("output directory (default: $") + kOutputDirEnv + " or .)");
    sub->add_option("--set", opts.overrides, "dotted-key override, e.g. scene.snr_db=10");
  };
  CLI::App* synth = app.add_subcommand("synth", "synthesize a scene and write Y plus its ground truth");
  CLI::App* solve = app.add_subcommand("solve", "decompose one scene; write Z_hat, V_hat, DOAs, detection and trace");
  CLI::App* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep and write metrics.csv");
  CLI::App* bench = app.add_subcommand("bench", "time every algorithm over snapshot and sensor lists");
  CLI::App* spectrum = app.add_subcommand("spectrum", "write the MUSIC spectrum of one decomposition");
  for (CLI::App* sub : {synth, solve, sweep, bench, spectrum}) add_common(sub);
  for (CLI::App* sub : {solve, spectrum})
    sub->add_option("--scene", opts.scene_dir, "directory written by `synth`; overrides the configured scene");
  sweep->add_option("-j,--workers", opts.workers, "worker threads or 'auto'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*synth) return cmd_synth(opts);
    if (*solve) return cmd_solve(opts);
    if (*sweep) return cmd_sweep(opts);
    if (*bench) return cmd_bench(opts);
    if (*spectrum) return cmd_spectrum(opts);
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverError;
  } catch (const config::ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace lr2sd::cli
