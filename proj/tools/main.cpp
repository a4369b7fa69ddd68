#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "armax_reach/conversion.hpp"
#include "armax_reach/errors.hpp"
#include "armax_reach/experiment.hpp"
#include "armax_reach/io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace armax_reach;

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_reach(const std::string& config_path, const std::string& out_dir, bool svg) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  const ExperimentOutputs outputs = run_experiment(cfg);

  fs::create_directories(out_dir);
  const std::string reach_path = (fs::path(out_dir) / "reach.csv").string();
  write_text_file(reach_path, reach_csv(outputs.runs));
  std::cout << "wrote " << reach_path << "\n";
  if (!outputs.samples.empty()) {
    const std::string cont_path = (fs::path(out_dir) / "containment.csv").string();
    write_text_file(cont_path, containment_csv(outputs.runs));
    std::cout << "wrote " << cont_path << "\n";
  }
  if (svg) {
    for (const std::string& name : write_reach_svgs(out_dir, outputs, cfg.svg_dims)) {
      std::cout << "wrote " << (fs::path(out_dir) / name).string() << "\n";
    }
  }
  for (const auto& run : outputs.runs) {
    std::cout << run.result.method << ": steps " << run.result.first_k << ".."
              << run.result.last_k();
    if (run.containment) {
      std::cout << ", min containment " << run.containment->min_fraction();
    }
    std::cout << "\n";
  }
  return 0;
}

int run_convert(const std::string& config_path, const std::string& out_file) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  if (cfg.model.type != ModelConfig::Type::kStateSpace) {
    throw ConfigError("config error at model.type: convert requires a state-space source");
  }
  std::optional<Eigen::MatrixXd> gain;
  double residual = 0.0;
  const ArmaxModel m = resolve_model(cfg, &gain, &residual);

  nlohmann::json out;
  out["type"] = "armax";
  out["p"] = m.p;
  out["n_y"] = m.n_y;
  out["n_u"] = m.n_u;
  out["n_w"] = m.n_w;
  out["n_v"] = m.n_v;
  out["A_bar"] = nlohmann::json::array();
  for (const auto& a : m.a_bar) out["A_bar"].push_back(matrix_json(a));
  out["B_bar"] = nlohmann::json::array();
  for (const auto& b : m.b_bar) out["B_bar"].push_back(matrix_json(b));
  if (gain) out["M"] = matrix_json(*gain);
  out["nilpotency_residual"] = residual;

  write_text_file(out_file, out.dump(2) + "\n");
  std::cout << "wrote " << out_file << " (nilpotency residual " << residual << ")\n";
  return 0;
}

int run_bench_cmd(const std::string& grid_path, int reps, const std::string& out_file) {
  const BenchGridConfig grid = load_bench_grid(grid_path);
  const std::vector<BenchRecord> records = run_bench(grid, reps);
  write_text_file(out_file, bench_csv(records));
  std::cout << "wrote " << out_file << " (" << records.size() << " records)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-based reachability of ARMAX input-output models"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", out_file, grid_path;
  bool svg = false;
  int reps = 5;

  CLI::App* reach = app.add_subcommand("reach", "Compute reachable output sets for a config");
  reach->add_option("config", config_path, "experiment config (JSON)")->required();
  reach->add_option("--out", out_dir, "output directory (default: out)");
  reach->add_flag("--svg", svg, "also write per-step SVG projections");

  CLI::App* convert = app.add_subcommand("convert", "Convert an SS model to ARMAX parameters");
  convert->add_option("config", config_path, "experiment config with an SS model")->required();
  convert->add_option("--out", out_file, "output parameter file (JSON)")->required();

  CLI::App* bench = app.add_subcommand("bench", "Run the scalability benchmark grid");
  bench->add_option("--grid", grid_path, "grid spec (JSON)")->required();
  bench->add_option("--reps", reps, "repetitions per cell (>= 3)");
  bench->add_option("--out", out_file, "output CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (reach->parsed()) return run_reach(config_path, out_dir, svg);
    if (convert->parsed()) return run_convert(config_path, out_file);
    if (bench->parsed()) return run_bench_cmd(grid_path, reps, out_file);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ConversionError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const EstimationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
