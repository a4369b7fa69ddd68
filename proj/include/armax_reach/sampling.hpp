#ifndef ARMAX_REACH_SAMPLING_HPP_
#define ARMAX_REACH_SAMPLING_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "armax_reach/models.hpp"
#include "armax_reach/reach.hpp"
#include "armax_reach/uncertainty.hpp"

namespace armax_reach {

/// Counter-based generator: a 64-bit mix of (seed, stream, substream, index)
/// yields each draw independently of call order, bit-identically on every
/// platform.
struct CounterRng {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t x);
  /// Uniform draw in [-1, 1] for the given stream coordinates.
  double uniform_pm1(std::uint64_t stream, std::uint64_t substream, std::uint64_t index) const;
};

/// One sampled disturbance realization and its output trajectory.
struct SampleRun {
  std::uint64_t sample_index = 0;
  std::vector<Eigen::VectorXd> u, w, v;  // per-step realizations
  std::vector<Eigen::VectorXd> y;        // trajectory from the order-p recursion
  /// Largest deviation between the stacked one-shot evaluation and the
  /// recursion across all covered steps (a point witness of their equivalence).
  double reformulation_error = 0.0;
};

/// c + G*lambda with lambda drawn uniformly from the factor box.
Eigen::VectorXd sample_point(const SymbolicZonotope& z, const CounterRng& rng,
                             std::uint64_t stream, std::uint64_t substream);

/// Draws n_samples realizations of (u, w, v) from the configured sets and
/// produces their trajectories over k = 0 .. p+k_h (extended to the end of
/// the last stacked block). Every trajectory is evaluated both through the
/// order-p recursion and the reformulated one-shot form; the deviation is
/// recorded in each run.
std::vector<SampleRun> run_samples(const ArmaxModel& m, const InitialOutputs& y_init,
                                   UncertaintySpec& spec, int k_h, int n_samples,
                                   std::uint64_t seed);

struct ContainmentReport {
  int first_k = 0;
  int total = 0;
  std::vector<double> fraction;  // per step of the result range; empty for no runs

  double min_fraction() const;
};

/// Per-step fraction of sampled outputs y(k) contained in the corresponding
/// reachable set. The result must carry materialized sets covering steps that
/// the trajectories reach.
ContainmentReport containment_report(const std::vector<SampleRun>& runs,
                                     const ReachResult& result, double tol);

}  // namespace armax_reach

#endif  // ARMAX_REACH_SAMPLING_HPP_
