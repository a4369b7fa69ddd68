#ifndef ARMAX_REACH_UNCERTAINTY_HPP_
#define ARMAX_REACH_UNCERTAINTY_HPP_

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "armax_reach/symbolic_zonotope.hpp"

namespace armax_reach {

/// One uncertainty channel (U, W or V): a constant set or a per-step list.
struct SetChannel {
  static SetChannel constant(Zonotope z);
  static SetChannel per_step(std::vector<Zonotope> steps);
  static SetChannel constant_point(Eigen::VectorXd center);

  const Zonotope& at(int k) const;  // throws std::out_of_range past the horizon
  Eigen::Index dim() const;
  /// Largest valid step index, or nullopt for constant channels.
  std::optional<int> horizon() const;

  bool is_constant = true;
  std::vector<Zonotope> entries;  // one entry when constant
};

/// Optional decomposition utilde_set(k) = U_c + u_v(k) with a constant set
/// and a per-step vector signal, required by the rescheduled algorithm.
struct InputDecomposition {
  Zonotope u_c;                          // constant combined set, dim n_utilde
  bool u_v_constant = true;
  std::vector<Eigen::VectorXd> u_v;      // one entry when constant

  const Eigen::VectorXd& u_v_at(int k) const;
};

/// Per-step uncertainty sets of a model, with the label bookkeeping that the
/// dependency-preserving engines rely on: every (channel, step) pair receives
/// fresh labels exactly once, so repeated queries at the same step return
/// identically labeled sets.
///
/// The registry is shared by everything in one analysis run; sets from
/// different runs must not be mixed.
class UncertaintySpec {
 public:
  UncertaintySpec(SetChannel u, SetChannel w, SetChannel v,
                  std::shared_ptr<LabelRegistry> registry = nullptr);

  enum class Channel { kU, kW, kV };

  /// Labeled channel set at step k (cached).
  const SymbolicZonotope& channel_set(Channel c, int k);

  /// Combined set utilde(k) = U(k) x W(k) x V(k), sharing the channel sets'
  /// labels (cached).
  const SymbolicZonotope& combined(int k);

  Eigen::Index n_u() const { return u_.dim(); }
  Eigen::Index n_w() const { return w_.dim(); }
  Eigen::Index n_v() const { return v_.dim(); }
  Eigen::Index n_utilde() const { return n_u() + n_w() + n_v(); }

  /// Largest step with configured sets, or nullopt when all channels are
  /// constant.
  std::optional<int> horizon() const;

  const SetChannel& u_channel() const { return u_; }
  const SetChannel& w_channel() const { return w_; }
  const SetChannel& v_channel() const { return v_; }

  void set_decomposition(InputDecomposition d);
  bool has_decomposition() const { return decomposition_.has_value(); }
  const InputDecomposition& decomposition() const;

  LabelRegistry& registry() { return *registry_; }
  const std::shared_ptr<LabelRegistry>& registry_ptr() const { return registry_; }

 private:
  SetChannel u_, w_, v_;
  std::optional<InputDecomposition> decomposition_;
  std::shared_ptr<LabelRegistry> registry_;
  std::map<std::pair<int, int>, SymbolicZonotope> channel_cache_;
  std::map<int, SymbolicZonotope> combined_cache_;
};

}  // namespace armax_reach

#endif  // ARMAX_REACH_UNCERTAINTY_HPP_
