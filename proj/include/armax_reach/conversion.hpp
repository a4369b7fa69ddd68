#ifndef ARMAX_REACH_CONVERSION_HPP_
#define ARMAX_REACH_CONVERSION_HPP_

#include <Eigen/Dense>

#include "armax_reach/models.hpp"

namespace armax_reach {

/// Frobenius norm of (A + M C)^p, the quantity the deadbeat property drives
/// to zero.
double deadbeat_residual(const StateSpaceModel& ss, const Eigen::MatrixXd& m, int p);

/// Acceptance threshold for the deadbeat check: 1e-8 * max(1, ||A||_F^p).
double deadbeat_tolerance(const StateSpaceModel& ss, int p);

/// Throws ConversionError when M fails the deadbeat property at order p.
void validate_deadbeat(const StateSpaceModel& ss, const Eigen::MatrixXd& m, int p);

/// Computes an observer gain M with (A + M C)^p = 0.
///
/// Deadbeat gains are not unique for multi-output systems; any gain passing
/// the nilpotency check is a valid witness. The construction works on the
/// dual controllable pair (A^T, C^T): it builds the flag of subspaces
/// Z_j = { x : (A^T)^j x reachable in j steps } and picks, for each new basis
/// direction of layer j, the input that pushes it into Z_{j-1}. The resulting
/// closed loop walks the flag down to {0} in at most p steps.
///
/// Throws ConversionError when (A, C) is not observable with index <= p; the
/// error reports the minimal feasible order.
Eigen::MatrixXd deadbeat_gain(const StateSpaceModel& ss, int p);

/// Smallest j such that the observability matrix O_j has full column rank,
/// or -1 if none exists up to j = n_x.
int observability_index(const StateSpaceModel& ss);

/// Converts the SS model to an equivalent order-p ARMAX model over the
/// combined input [u; w; v]:
///   A_bar_i = -C (A + MC)^{i-1} M
///   B_bar_0 = [D 0 I],  B_bar_i = C (A + MC)^{i-1} ([B I 0] + M [D 0 I]).
/// M is validated before use.
ArmaxModel ss_to_armax(const StateSpaceModel& ss, const Eigen::MatrixXd& m, int p);

}  // namespace armax_reach

#endif  // ARMAX_REACH_CONVERSION_HPP_
