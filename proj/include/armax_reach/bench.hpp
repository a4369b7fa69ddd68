#ifndef ARMAX_REACH_BENCH_HPP_
#define ARMAX_REACH_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "armax_reach/config.hpp"
#include "armax_reach/models.hpp"
#include "armax_reach/uncertainty.hpp"

namespace armax_reach {

/// One random reachability instance at nominal dimensions n_y0 = 2,
/// n_utilde0 = 3 scaled by f_n, regenerated deterministically from the seed.
struct RandomInstance {
  ArmaxModel model;
  std::vector<Eigen::VectorXd> y_init;
  SetChannel u, w, v;
  InputDecomposition decomposition;
};

/// Random ARMAX system with the A_bar_i scaled so the companion matrix has
/// spectral radius <= 0.95, plus constant zonotopic uncertainty channels with
/// set_order generators per dimension. With vary_signal the channel centers
/// move per step (covering steps 0..signal_steps) while U_c stays constant,
/// exercising the decomposition's signal path.
RandomInstance random_instance(std::uint64_t seed, int f_n, int p, int set_order,
                               bool vary_signal = false, int signal_steps = 0);

struct BenchRecord {
  Method method;
  int f_k = 0;
  int f_n = 0;
  int p = 0;
  double median_s = 0.0;
  std::string slope_axis;       // axis this record's fit swept, "" when none
  std::optional<double> slope;  // fitted log-log slope for that axis
};

/// Times every (method, f_k, f_n, p) cell of the grid: horizon k_h = f_k * p,
/// median over `reps` runs after one discarded warm-up. Cells are distributed
/// over ARMAX_REACH_THREADS worker threads (default 1). Slopes are fitted per
/// method along every swept axis, holding the other axes at their first value.
std::vector<BenchRecord> run_bench(const BenchGridConfig& grid, int reps);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace armax_reach

#endif  // ARMAX_REACH_BENCH_HPP_
