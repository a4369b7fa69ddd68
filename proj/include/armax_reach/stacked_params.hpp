#ifndef ARMAX_REACH_STACKED_PARAMS_HPP_
#define ARMAX_REACH_STACKED_PARAMS_HPP_

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "armax_reach/models.hpp"

namespace armax_reach {

/// Companion-block lift of an order-p ARMAX model and the time-varying
/// parameters of its reformulation
///   ytilde(k:k+p-1) = A_tilde(k) ytilde_init + sum_i B_tilde_i(k) utilde(k_+ - i)
/// with A_tilde(k) = A_ext^k and B_tilde_i(k) = sum_{j<k} A_ext^j B_ext_{i-j}.
struct StackedParams {
  int p = 0;
  Eigen::Index n_y = 0;
  Eigen::Index n_utilde = 0;

  Eigen::MatrixXd a_ext;               // p n_y x p n_y, identity superdiagonal blocks,
                                       // bottom block row [A_bar_p ... A_bar_1]
  std::vector<Eigen::MatrixXd> b_ext;  // b_ext[i] = [0; ...; 0; B_bar_i], i = 0..p

  int k = 0;                           // step the time-varying parameters describe
  Eigen::MatrixXd a_tilde;             // A_ext^k
  std::map<int, Eigen::MatrixXd> b_tilde;

  Eigen::Index stacked_dim() const { return static_cast<Eigen::Index>(p) * n_y; }

  /// B_ext_i with the zero convention for i < 0 or i > p.
  Eigen::MatrixXd b_ext_at(int i) const;

  /// A_ext * X without forming the full product: the top (p-1) block rows of
  /// the result are X shifted up by one block; only the bottom block row
  /// needs a multiplication.
  Eigen::MatrixXd companion_apply(const Eigen::MatrixXd& x) const;

  /// A_ext^times * X by repeated companion application.
  Eigen::MatrixXd companion_apply_power(Eigen::MatrixXd x, int times) const;
};

/// Exact block layout of the companion extension; time-varying parameters
/// left at k = 0 (A_tilde = I, no B_tilde entries).
StackedParams build_extended(const ArmaxModel& m);

/// Time-varying parameters straight from their defining sums: A_tilde = A_ext^k
/// and B_tilde_i(k) for i = 0..k+p-1. Serves as the oracle for the recursions.
StackedParams params_direct(const StackedParams& sp, int k);

/// Parameters at k + delta_k from those at k. Only indices i >= p + delta_k
/// are covered by the recursion; the returned map holds exactly those.
StackedParams advance_params(const StackedParams& sp, int delta_k);

/// Whether B_tilde_i(k + delta_k) equals B_tilde_i(k) to 1e-12. Requires
/// i < k and delta_k >= 0, the regime in which the parameter is frozen.
bool frozen_param_check(const StackedParams& sp, int i, int k, int delta_k);

/// B_tilde_{i+1}(k) from B_tilde_i(k):
///   B_tilde_{i+1}(k) = A_ext B_tilde_i(k) + B_ext_{i+1} - A_ext^k B_ext_{i+1-k}.
/// sp must hold B_tilde_i at its current step sp.k.
Eigen::MatrixXd step_param(const StackedParams& sp, int i);

/// Per-step blocks of a stacked quantity: block i covers rows [i n_y, (i+1) n_y).
Eigen::VectorXd stacked_block(const Eigen::VectorXd& stacked, int i, Eigen::Index n_y);

}  // namespace armax_reach

#endif  // ARMAX_REACH_STACKED_PARAMS_HPP_
