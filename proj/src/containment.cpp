#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "armax_reach/linear_program.hpp"
#include "armax_reach/symbolic_zonotope.hpp"

namespace armax_reach {

// Membership of p in <c, G> at tolerance tol is the feasibility of
//   G*lambda + sigma = (p - c) + tol*1,   lambda in [-(1+tol), 1+tol]^q,
//   sigma in [0, 2 tol]^n,
// which relaxes every equality G*lambda = p - c componentwise by tol.
bool contains_point(const SymbolicZonotope& z, const Eigen::VectorXd& p, double tol) {
  if (p.size() != z.dim()) {
    throw std::invalid_argument("contains_point: point dimension must equal set dimension");
  }
  if (tol < 0.0) {
    throw std::invalid_argument("contains_point: tolerance must be nonnegative");
  }
  const Eigen::Index n = z.dim();
  Eigen::VectorXd d = p - z.center();

  // Cheap reject via the interval hull before setting up the program.
  Eigen::VectorXd radius = z.generators().cwiseAbs().rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(d[i]) > (1.0 + tol) * radius[i] + tol + 1e-15) return false;
  }

  // Zero columns cannot contribute; keep the program small.
  std::vector<Eigen::Index> cols;
  cols.reserve(z.num_generators());
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    if (z.generators().col(j).cwiseAbs().maxCoeff() > 0.0) cols.push_back(j);
  }
  const Eigen::Index q = static_cast<Eigen::Index>(cols.size());
  if (q == 0) {
    return d.cwiseAbs().maxCoeff() <= tol + 1e-15;
  }

  Eigen::MatrixXd a(n, q + n);
  for (Eigen::Index j = 0; j < q; ++j) a.col(j) = z.generators().col(cols[j]);
  a.rightCols(n) = Eigen::MatrixXd::Identity(n, n);

  Eigen::VectorXd lower(q + n), upper(q + n);
  lower.head(q).setConstant(-(1.0 + tol));
  upper.head(q).setConstant(1.0 + tol);
  lower.tail(n).setZero();
  upper.tail(n).setConstant(2.0 * tol);

  Eigen::VectorXd b = d + Eigen::VectorXd::Constant(n, tol);
  return solve_box_feasibility(a, b, lower, upper).feasible;
}

}  // namespace armax_reach
