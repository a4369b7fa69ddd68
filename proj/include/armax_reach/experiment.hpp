#ifndef ARMAX_REACH_EXPERIMENT_HPP_
#define ARMAX_REACH_EXPERIMENT_HPP_

#include <optional>
#include <vector>

#include "armax_reach/config.hpp"
#include "armax_reach/reach.hpp"
#include "armax_reach/sampling.hpp"

namespace armax_reach {

struct MethodRun {
  Method method;
  ReachResult result;
  std::optional<ContainmentReport> containment;
};

struct ExperimentOutputs {
  ArmaxModel armax;                       // model the ARMAX engines ran on
  std::optional<Eigen::MatrixXd> m_gain;  // observer gain when converted from SS
  double nilpotency_residual = 0.0;
  std::vector<MethodRun> runs;            // in configured method order
  std::vector<SampleRun> samples;
};

/// Runs every configured method on one shared label registry, then samples
/// trajectories and attaches per-method containment reports when sampling is
/// enabled.
ExperimentOutputs run_experiment(const ExperimentConfig& cfg);

/// The ARMAX model a config resolves to (conversion applied for SS sources).
/// Returns the gain and its nilpotency residual through the output arguments.
ArmaxModel resolve_model(const ExperimentConfig& cfg, std::optional<Eigen::MatrixXd>* m_gain,
                         double* residual);

}  // namespace armax_reach

#endif  // ARMAX_REACH_EXPERIMENT_HPP_
