#ifndef ARMAX_REACH_REACH_HPP_
#define ARMAX_REACH_REACH_HPP_

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "armax_reach/models.hpp"
#include "armax_reach/stacked_params.hpp"
#include "armax_reach/symbolic_zonotope.hpp"
#include "armax_reach/uncertainty.hpp"

namespace armax_reach {

struct ReachOptions {
  /// When false, only interval hulls are recorded and the per-step sets are
  /// not materialized. The rescheduled engine then runs without touching the
  /// accumulated generator matrix, which is what its linear-in-horizon cost
  /// relies on.
  bool collect_sets = true;
};

/// Output sets of one reachability run over a contiguous step range.
struct ReachResult {
  std::string method;
  int first_k = 0;
  std::vector<SymbolicZonotope> sets;  // empty when collect_sets was false
  std::vector<IntervalHull> hulls;
  std::vector<double> iteration_seconds;
  /// Generator counts of the constant-size auxiliary sets per iteration of
  /// the rescheduled engine: {T_c1, T_c2}. Empty for other engines.
  std::vector<std::array<Eigen::Index, 2>> aux_generator_counts;

  int last_k() const { return first_k + static_cast<int>(hulls.size()) - 1; }
  bool has_sets() const { return !sets.empty(); }
  const SymbolicZonotope& set_at(int k) const;
  const IntervalHull& hull_at(int k) const;
};

/// Set-valued evaluation of the ARMAX recursion with exact additions
/// throughout; with a dependency-preserving representation the computed
/// output sets are exact. Y(i) for i < p are the measurement points; results
/// cover k = p .. p+k_h.
ReachResult reach_dependent(const ArmaxModel& m, const InitialOutputs& y_init,
                            UncertaintySpec& spec, int k_h,
                            const ReachOptions& options = {});

/// Ablation: every exact addition replaced by a Minkowski sum whose second
/// operand is freshly relabeled, discarding all dependencies. Identical to
/// reach_dependent at k = p, over-approximative afterwards.
ReachResult reach_dependent_dp(const ArmaxModel& m, const InitialOutputs& y_init,
                               UncertaintySpec& spec, int k_h,
                               const ReachOptions& options = {});

/// One-shot evaluation of the reformulated model at step k >= p: the stacked
/// reachable set over [k, k+p-1]. Parameters come straight from their
/// defining sums, which makes this the oracle the iterative engines are
/// checked against.
SymbolicZonotope reach_oneshot(const ArmaxModel& m, const InitialOutputs& y_init,
                               UncertaintySpec& spec, int k);

/// Splits a stacked set over [k, k+p-1] into its p per-step blocks.
std::vector<SymbolicZonotope> unstack(const SymbolicZonotope& stacked, int p);

/// Iterative engine valid for arbitrary set representations: emits p steps
/// per iteration from the running set S, reusing frozen parameters and
/// recomputing B_tilde_p..B_tilde_{2p-1} while k < 3p. Results cover
/// k = k_init .. p+k_h (the trailing partial block is truncated).
ReachResult reach_alg1(const ArmaxModel& m, const InitialOutputs& y_init,
                       UncertaintySpec& spec, int k_init, int k_h,
                       const ReachOptions& options = {});

/// Rescheduled engine requiring the decomposition utilde_set(i) = U_c + u_v(i).
/// Only the constant-size sets T_c1/T_c2 are linearly transformed, so per
/// iteration the work does not grow with k.
ReachResult reach_alg2(const ArmaxModel& m, const InitialOutputs& y_init,
                       UncertaintySpec& spec, int k_init, int k_h,
                       const ReachOptions& options = {});

/// Classic output reachable set of the SS model at step k from an
/// independent initial state set X0.
SymbolicZonotope reach_ss(const StateSpaceModel& ss, const SymbolicZonotope& x0,
                          UncertaintySpec& spec, int k);

/// Initial-state set consistent with the first p measurements:
///   X(0) = O_p^+ ( ytilde_init + (-H(0) x ... x -H(p-1)) )
/// with H(k) the input/disturbance contribution to y(k). The pseudoinverse
/// treats singular values below 1e-10 * sigma_max as zero. The returned set
/// is freshly labeled: the estimate is deliberately independent of the
/// uncertainty sets it was derived from.
SymbolicZonotope estimate_initial_state_set(const StateSpaceModel& ss,
                                            const InitialOutputs& y_init,
                                            UncertaintySpec& spec, int p);

namespace detail {

/// Zonotope held in reusable storage for the iterative engines: columns are
/// appended into reserved capacity (amortized O(appended), no reallocation
/// churn), the companion transform runs in place, and the running row-wise
/// sum of |g| keeps hull queries O(n).
class GrowableSet {
 public:
  explicit GrowableSet(Eigen::VectorXd center);

  void add_center(const Eigen::VectorXd& v) { center_ += v; }
  void append(const Eigen::MatrixXd& cols, const std::vector<Label>& labels);
  /// Appends map * z (columns map*G under z's labels; center accumulated).
  void add_term(const Eigen::MatrixXd& map, const SymbolicZonotope& z);
  /// Appends map * <c, G> under explicit labels (one fresh occurrence of a
  /// constant set).
  void add_term_raw(const Eigen::MatrixXd& map, const Eigen::VectorXd& c,
                    const Eigen::MatrixXd& g, std::vector<Label> labels);
  void append_from(const GrowableSet& other, const std::vector<Label>& labels);

  /// In-place A_ext^times using the companion structure; refreshes the hull
  /// accumulator afterwards.
  void companion_transform(const StackedParams& sp, int times);

  Eigen::Index cols() const { return used_; }
  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::VectorXd& abs_sum() const { return abs_sum_; }
  const std::vector<Label>& labels() const { return labels_; }
  auto generators() const { return gens_.leftCols(used_); }
  IntervalHull hull() const { return {center_ - abs_sum_, center_ + abs_sum_}; }
  SymbolicZonotope snapshot() const;

 private:
  void reserve(Eigen::Index extra);

  Eigen::VectorXd center_;
  Eigen::MatrixXd gens_;
  std::vector<Label> labels_;
  Eigen::Index used_ = 0;
  Eigen::VectorXd abs_sum_;
  Eigen::MatrixXd bottom_scratch_;  // staging rows for the in-place transform
};

}  // namespace detail

/// State carried between iterations of the rescheduled engine.
struct Alg2State {
  detail::GrowableSet s_c;               // accumulated constant-input contribution
  detail::GrowableSet t_c1;              // constant-size, linearly transformed
  std::optional<detail::GrowableSet> t_c2;  // created at k = k_init + p
  Eigen::VectorXd s_v;                   // signal contribution
  int k = 0;
  int k_plus = 0;
};

}  // namespace armax_reach

#endif  // ARMAX_REACH_REACH_HPP_
