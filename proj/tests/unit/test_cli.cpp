#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "armax_reach/config.hpp"
#include "armax_reach/experiment.hpp"
#include "armax_reach/io.hpp"

using namespace armax_reach;
namespace fs = std::filesystem;

namespace {

// The CLI binary path is provided by the test harness.
std::string cli_binary() {
  const char* bin = std::getenv("ARMAX_REACH_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "ARMAX_REACH_CLI_BIN not set");
  return bin;
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("reach on the pedestrian config writes the expected artifacts") {
  const fs::path out = fs::temp_directory_path() / "armax_cli_reach";
  fs::remove_all(out);
  REQUIRE(run_cli("reach " CONFIG_DIR "/pedestrian.json --out " + out.string() + " --svg") == 0);
  CHECK(fs::exists(out / "reach.csv"));
  CHECK(fs::exists(out / "containment.csv"));
  CHECK(fs::exists(out / "reach_k2.svg"));
  CHECK(fs::exists(out / "reach_k11.svg"));

  const std::string csv = slurp(out / "reach.csv");
  CHECK(csv.rfind("method,k,dim,lower,upper\n", 0) == 0);
  for (const char* tag : {"SS,", "ARMAX,", "ARMAX-DP,", "ARMAX-ALG2,"}) {
    CHECK(csv.find(tag) != std::string::npos);
  }
  CHECK(csv.find("ARMAX,2,0,") != std::string::npos);
  CHECK(csv.find("ARMAX,11,1,") != std::string::npos);
  CHECK(csv.find("ARMAX,12,") == std::string::npos);

  // Repeated runs are byte-identical.
  const fs::path out2 = fs::temp_directory_path() / "armax_cli_reach2";
  fs::remove_all(out2);
  REQUIRE(run_cli("reach " CONFIG_DIR "/pedestrian.json --out " + out2.string()) == 0);
  CHECK(slurp(out / "reach.csv") == slurp(out2 / "reach.csv"));
  CHECK(slurp(out / "containment.csv") == slurp(out2 / "containment.csv"));
}

TEST_CASE("config errors exit with status 2") {
  const fs::path dir = fs::temp_directory_path() / "armax_cli_bad";
  fs::create_directories(dir);

  write(dir / "missing.json", "");
  CHECK(run_cli("reach " + (dir / "missing.json").string()) == 2);

  nlohmann::json bad = nlohmann::json::parse(slurp(CONFIG_DIR "/pedestrian.json"));
  bad["y_init"] = nlohmann::json::array({nlohmann::json::array({0, 0, 0}),
                                         nlohmann::json::array({0, 0, 0})});
  write(dir / "dims.json", bad.dump());
  CHECK(run_cli("reach " + (dir / "dims.json").string()) == 2);

  nlohmann::json none = nlohmann::json::parse(slurp(CONFIG_DIR "/pedestrian.json"));
  none["methods"] = nlohmann::json::array();
  write(dir / "none.json", none.dump());
  CHECK(run_cli("reach " + (dir / "none.json").string()) == 2);
}

TEST_CASE("numerical failures exit with status 3") {
  const fs::path dir = fs::temp_directory_path() / "armax_cli_num";
  fs::create_directories(dir);
  nlohmann::json cfg = nlohmann::json::parse(slurp(CONFIG_DIR "/pedestrian.json"));
  cfg["model"]["C"] = nlohmann::json::parse("[[0,0,0,0],[0,0,0,0]]");
  cfg["model"].erase("M");
  write(dir / "unobservable.json", cfg.dump());
  CHECK(run_cli("convert " + (dir / "unobservable.json").string() + " --out " +
                (dir / "params.json").string()) == 3);
}

TEST_CASE("converted parameters round-trip into identical reach results") {
  const fs::path dir = fs::temp_directory_path() / "armax_cli_convert";
  fs::create_directories(dir);
  const fs::path params = dir / "pedestrian_armax.json";
  REQUIRE(run_cli("convert " CONFIG_DIR "/pedestrian.json --out " + params.string()) == 0);

  nlohmann::json converted = nlohmann::json::parse(slurp(params));
  CHECK(converted["p"] == 2);
  CHECK(converted["nilpotency_residual"].get<double>() <= 1e-12);
  CHECK(converted["A_bar"][0][0][0].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(converted["A_bar"][1][0][0].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));

  nlohmann::json cfg = nlohmann::json::parse(slurp(CONFIG_DIR "/pedestrian.json"));
  cfg["model"] = converted;
  cfg["methods"] = nlohmann::json::array({"ARMAX", "ARMAX-DP", "ARMAX-ALG2"});
  const ExperimentConfig direct = parse_experiment_config(cfg.dump());
  ExperimentConfig from_ss = load_experiment_config(CONFIG_DIR "/pedestrian.json");
  from_ss.methods = direct.methods;

  const ExperimentOutputs a = run_experiment(direct);
  const ExperimentOutputs b = run_experiment(from_ss);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    const auto& ha = a.runs[i].result.hulls;
    const auto& hb = b.runs[i].result.hulls;
    REQUIRE(ha.size() == hb.size());
    for (std::size_t j = 0; j < ha.size(); ++j) {
      CHECK((ha[j].lower - hb[j].lower).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((ha[j].upper - hb[j].upper).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("bench grid validation exits with status 2") {
  const fs::path dir = fs::temp_directory_path() / "armax_cli_bench";
  fs::create_directories(dir);
  write(dir / "grid.json", R"({"f_k": [2], "f_n": [1], "p": [1],
                               "methods": ["ARMAX-ALG2"], "seed": 1, "set_order": 2})");
  CHECK(run_cli("bench --grid " + (dir / "grid.json").string() + " --reps 1 --out " +
                (dir / "bench.csv").string()) == 2);
  CHECK(run_cli("bench --grid " + (dir / "grid.json").string() + " --reps 3 --out " +
                (dir / "bench.csv").string()) == 0);
  const std::string csv = slurp(dir / "bench.csv");
  CHECK(csv.rfind("method,f_k,f_n,p,median_s,slope_axis,slope\n", 0) == 0);

  write(dir / "empty.json", R"({"f_k": [], "methods": ["ARMAX"]})");
  CHECK(run_cli("bench --grid " + (dir / "empty.json").string() + " --reps 3 --out " +
                (dir / "bench.csv").string()) == 2);
}
