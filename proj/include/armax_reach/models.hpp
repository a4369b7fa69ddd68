#ifndef ARMAX_REACH_MODELS_HPP_
#define ARMAX_REACH_MODELS_HPP_

#include <Eigen/Dense>
#include <vector>

namespace armax_reach {

/// Linear discrete-time state-space model
///   x(k+1) = A x(k) + B u(k) + w(k)
///   y(k)   = C x(k) + D u(k) + v(k).
struct StateSpaceModel {
  Eigen::MatrixXd A;  // n_x x n_x
  Eigen::MatrixXd B;  // n_x x n_u
  Eigen::MatrixXd C;  // n_y x n_x
  Eigen::MatrixXd D;  // n_y x n_u

  Eigen::Index n_x() const { return A.rows(); }
  Eigen::Index n_u() const { return B.cols(); }
  Eigen::Index n_y() const { return C.rows(); }

  /// Throws std::invalid_argument on inconsistent dimensions or non-finite entries.
  void validate() const;
};

/// ARMAX model of order p over the combined input utilde = [u; w; v]:
///   y(k) = sum_{i=1..p} A_bar_i y(k-i) + sum_{i=0..p} B_bar_i utilde(k-i).
///
/// a_bar[i] holds A_bar_{i+1}; b_bar[i] holds B_bar_i.
struct ArmaxModel {
  int p = 0;
  Eigen::Index n_y = 0;
  Eigen::Index n_u = 0;
  Eigen::Index n_w = 0;
  Eigen::Index n_v = 0;
  std::vector<Eigen::MatrixXd> a_bar;  // p matrices, n_y x n_y
  std::vector<Eigen::MatrixXd> b_bar;  // p+1 matrices, n_y x n_utilde

  Eigen::Index n_utilde() const { return n_u + n_w + n_v; }

  void validate() const;
};

/// The p initial measurements y(0), ..., y(p-1), stacked into one vector.
struct InitialOutputs {
  Eigen::VectorXd stacked;  // length p * n_y
  int p = 0;
  Eigen::Index n_y = 0;

  static InitialOutputs from_vectors(const std::vector<Eigen::VectorXd>& ys);

  Eigen::VectorXd y(int i) const { return stacked.segment(i * n_y, n_y); }
};

/// Exact recursion of the SS model. Returns y(0..horizon); u, w, v must each
/// provide horizon+1 entries.
std::vector<Eigen::VectorXd> simulate_ss(const StateSpaceModel& ss, const Eigen::VectorXd& x0,
                                         const std::vector<Eigen::VectorXd>& u,
                                         const std::vector<Eigen::VectorXd>& w,
                                         const std::vector<Eigen::VectorXd>& v, int horizon);

/// Exact recursion of the ARMAX model. Returns y(0..horizon) where the first
/// p entries are the given initial outputs; utilde must provide horizon+1
/// entries (entries before index horizon-p are unused only when horizon < p).
std::vector<Eigen::VectorXd> simulate_armax(const ArmaxModel& m, const InitialOutputs& y_init,
                                            const std::vector<Eigen::VectorXd>& utilde,
                                            int horizon);

}  // namespace armax_reach

#endif  // ARMAX_REACH_MODELS_HPP_
