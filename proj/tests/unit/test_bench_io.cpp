#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>

#include "armax_reach/bench.hpp"
#include "armax_reach/errors.hpp"
#include "armax_reach/experiment.hpp"
#include "armax_reach/io.hpp"
#include "armax_reach/stacked_params.hpp"
#include "test_support.hpp"

using namespace armax_reach;

TEST_CASE("log-log slope recovers exact power laws") {
  const std::vector<double> x{4, 8, 16, 32};
  std::vector<double> lin, quad;
  for (double v : x) {
    lin.push_back(3.0 * v);
    quad.push_back(0.5 * v * v);
  }
  CHECK(log_log_slope(x, lin) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_log_slope(x, quad) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(log_log_slope({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("random instances are deterministic and stable") {
  const RandomInstance a = random_instance(42, 1, 3, 4);
  const RandomInstance b = random_instance(42, 1, 3, 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(test_support::max_abs_diff(a.model.a_bar[static_cast<std::size_t>(i)],
                                     b.model.a_bar[static_cast<std::size_t>(i)]) == 0.0);
  }
  const RandomInstance c = random_instance(43, 1, 3, 4);
  CHECK(test_support::max_abs_diff(a.model.a_bar[0], c.model.a_bar[0]) > 0.0);

  const StackedParams sp = build_extended(a.model);
  const double rho =
      Eigen::EigenSolver<Eigen::MatrixXd>(sp.a_ext, false).eigenvalues().cwiseAbs().maxCoeff();
  CHECK(rho <= 0.95 + 1e-9);
}

TEST_CASE("instance dimensions follow the nominal scaling") {
  const RandomInstance inst = random_instance(1, 3, 2, 5);
  CHECK(inst.model.n_y == 6);
  CHECK(inst.model.n_utilde() == 9);
  CHECK(inst.decomposition.u_c.generators.cols() == 5 * 9);
}

TEST_CASE("a single-cell grid yields one record per method") {
  BenchGridConfig grid;
  grid.f_k = {2};
  grid.f_n = {1};
  grid.p = {1};
  grid.methods = {Method::kArmax, Method::kArmaxAlg2};
  grid.seed = 5;
  grid.set_order = 2;
  const auto records = run_bench(grid, 3);
  REQUIRE(records.size() == 2);
  for (const auto& r : records) {
    CHECK(r.median_s > 0.0);
    CHECK(r.slope_axis.empty());  // nothing swept
    CHECK(!r.slope.has_value());
  }
}

TEST_CASE("the median needs at least three repetitions") {
  BenchGridConfig grid;
  grid.methods = {Method::kArmax};
  CHECK_THROWS_AS(run_bench(grid, 1), ConfigError);
  grid.methods.clear();
  CHECK_THROWS_AS(run_bench(grid, 3), ConfigError);
}

TEST_CASE("swept axes are annotated with one slope per method") {
  BenchGridConfig grid;
  grid.f_k = {2, 4};
  grid.f_n = {1};
  grid.p = {1};
  grid.methods = {Method::kArmaxAlg2};
  grid.seed = 5;
  grid.set_order = 2;
  const auto records = run_bench(grid, 3);
  REQUIRE(records.size() == 2);
  CHECK(records[0].slope_axis == "f_k");
  REQUIRE(records[0].slope.has_value());
  CHECK(*records[0].slope == *records[1].slope);
}

TEST_CASE("reach CSV has the pinned schema and ordering") {
  const ExperimentConfig cfg = load_experiment_config(CONFIG_DIR "/pedestrian.json");
  ExperimentConfig small = cfg;
  small.n_samples = 5;
  small.k_h = 2;
  const ExperimentOutputs out = run_experiment(small);
  const std::string csv = reach_csv(out.runs);
  CHECK(csv.rfind("method,k,dim,lower,upper\n", 0) == 0);
  // 4 methods x 3 steps x 2 dims data rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 3 * 2);
  CHECK(csv.find("ARMAX,2,0,") != std::string::npos);
  // Lexicographic method order puts ARMAX before ARMAX-DP before SS.
  CHECK(csv.find("ARMAX,") < csv.find("ARMAX-ALG2,"));
  CHECK(csv.find("ARMAX-ALG2,") < csv.find("ARMAX-DP,"));
  CHECK(csv.find("ARMAX-DP,") < csv.find("SS,"));

  const std::string containment = containment_csv(out.runs);
  CHECK(containment.rfind("method,k,fraction\n", 0) == 0);
  CHECK(std::count(containment.begin(), containment.end(), '\n') == 1 + 4 * 3);
}

TEST_CASE("identical configs and seeds give byte-identical CSV") {
  ExperimentConfig cfg = load_experiment_config(CONFIG_DIR "/pedestrian.json");
  cfg.n_samples = 20;
  cfg.k_h = 3;
  const ExperimentOutputs a = run_experiment(cfg);
  const ExperimentOutputs b = run_experiment(cfg);
  CHECK(reach_csv(a.runs) == reach_csv(b.runs));
  CHECK(containment_csv(a.runs) == containment_csv(b.runs));
}

TEST_CASE("bench CSV has the pinned schema") {
  BenchGridConfig grid;
  grid.f_k = {2, 4};
  grid.f_n = {1};
  grid.p = {1};
  grid.methods = {Method::kArmaxAlg2};
  grid.seed = 5;
  grid.set_order = 2;
  const std::string csv = bench_csv(run_bench(grid, 3));
  CHECK(csv.rfind("method,f_k,f_n,p,median_s,slope_axis,slope\n", 0) == 0);
  CHECK(csv.find("ARMAX-ALG2,2,1,1,") != std::string::npos);
  CHECK(csv.find(",f_k,") != std::string::npos);
}

TEST_CASE("SVG projections are written per step") {
  ExperimentConfig cfg = load_experiment_config(CONFIG_DIR "/pedestrian.json");
  cfg.n_samples = 5;
  cfg.k_h = 1;
  const ExperimentOutputs out = run_experiment(cfg);
  const std::string dir = "svg_test_out";
  const auto files = write_reach_svgs(dir, out, cfg.svg_dims);
  REQUIRE(files.size() == 2);  // k = 2, 3
  CHECK(files[0] == "reach_k2.svg");
  std::ifstream in(dir + "/reach_k2.svg");
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content.find("<svg") != std::string::npos);
  CHECK(content.find("<polygon") != std::string::npos);
  CHECK(content.find("<circle") != std::string::npos);  // sample overlay
}
