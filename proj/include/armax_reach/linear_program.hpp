#ifndef ARMAX_REACH_LINEAR_PROGRAM_HPP_
#define ARMAX_REACH_LINEAR_PROGRAM_HPP_

#include <Eigen/Dense>

namespace armax_reach {

struct BoxFeasibility {
  bool feasible = false;
  Eigen::VectorXd x;      // a feasible point when feasible, else the phase-1 optimum
  double residual = 0.0;  // remaining l1 infeasibility at the optimum
};

/// Decides whether { x : A x = b, lower <= x <= upper } is nonempty using a
/// phase-1 simplex with bounded variables and Bland's rule. The system is
/// declared feasible when the optimal artificial mass drops below
/// eps * max(1, ||b||_inf). Intended for the small, dense systems arising
/// from point-in-zonotope queries.
BoxFeasibility solve_box_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     const Eigen::VectorXd& lower,
                                     const Eigen::VectorXd& upper, double eps = 1e-10);

}  // namespace armax_reach

#endif  // ARMAX_REACH_LINEAR_PROGRAM_HPP_
