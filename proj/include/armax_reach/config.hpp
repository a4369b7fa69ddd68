#ifndef ARMAX_REACH_CONFIG_HPP_
#define ARMAX_REACH_CONFIG_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "armax_reach/models.hpp"
#include "armax_reach/uncertainty.hpp"

namespace armax_reach {

enum class Method {
  kSS,
  kArmax,
  kArmaxDp,
  kArmaxOneshot,
  kArmaxAlg1,
  kArmaxAlg2,
};

const char* method_tag(Method m);
Method method_from_tag(const std::string& tag);  // throws ConfigError

/// Model source: state-space matrices with an order (and optionally an
/// explicit observer gain), or direct ARMAX parameters.
struct ModelConfig {
  enum class Type { kStateSpace, kArmax };
  Type type = Type::kArmax;

  StateSpaceModel ss;                     // type == kStateSpace
  std::optional<Eigen::MatrixXd> m_gain;  // explicit deadbeat gain, validated before use
  int p = 0;

  ArmaxModel armax;                       // type == kArmax
};

struct ExperimentConfig {
  ModelConfig model;
  SetChannel u, w, v;
  std::optional<InputDecomposition> decomposition;
  std::vector<Eigen::VectorXd> y_init;
  int k_init = -1;  // -1 resolves to p
  int k_h = 0;
  std::vector<Method> methods;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::array<Eigen::Index, 2> svg_dims = {0, 1};

  int order() const { return model.type == ModelConfig::Type::kArmax ? model.armax.p : model.p; }
  int resolved_k_init() const { return k_init < 0 ? order() : k_init; }
};

/// Parses and cross-validates a config document. All dimension checks happen
/// here, before any computation. Throws ConfigError with a path-anchored
/// message (or a line-anchored one for malformed JSON).
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Grid specification for the scalability benchmark.
struct BenchGridConfig {
  std::vector<int> f_k{1};
  std::vector<int> f_n{1};
  std::vector<int> p{2};
  std::vector<Method> methods;
  std::uint64_t seed = 0;
  int set_order = 10;  // generators per combined-input dimension
};

BenchGridConfig parse_bench_grid(const std::string& json_text);
BenchGridConfig load_bench_grid(const std::string& path);

}  // namespace armax_reach

#endif  // ARMAX_REACH_CONFIG_HPP_
