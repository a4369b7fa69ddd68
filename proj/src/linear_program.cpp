#include "armax_reach/linear_program.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace armax_reach {

namespace {

enum class VarState { kBasic, kAtLower, kAtUpper };

constexpr double kReducedCostTol = 1e-11;
constexpr double kPivotTol = 1e-11;

}  // namespace

BoxFeasibility solve_box_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     const Eigen::VectorXd& lower,
                                     const Eigen::VectorXd& upper, double eps) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("solve_box_feasibility: inconsistent dimensions");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) {
      throw std::invalid_argument("solve_box_feasibility: lower bound exceeds upper bound");
    }
  }

  // Variables 0..n-1 are the structural variables, n..n+m-1 the artificials.
  // Artificial i has column sign_i * e_i so the all-artificial start is basic
  // feasible; an artificial that leaves the basis is fixed at zero for good.
  const Eigen::Index total = n + m;
  std::vector<VarState> state(static_cast<std::size_t>(total), VarState::kAtLower);
  Eigen::VectorXd x(total);
  for (Eigen::Index j = 0; j < n; ++j) {
    x[j] = std::abs(lower[j]) <= std::abs(upper[j]) ? lower[j] : upper[j];
    state[static_cast<std::size_t>(j)] =
        x[j] == lower[j] ? VarState::kAtLower : VarState::kAtUpper;
  }

  Eigen::VectorXd residual = b - a * x.head(n);
  Eigen::VectorXd art_sign(m);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    art_sign[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
    x[n + i] = std::abs(residual[i]);
    basis[static_cast<std::size_t>(i)] = n + i;
    state[static_cast<std::size_t>(n + i)] = VarState::kBasic;
  }

  auto column = [&](Eigen::Index j) -> Eigen::VectorXd {
    if (j < n) return a.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[j - n] = art_sign[j - n];
    return e;
  };
  auto lower_of = [&](Eigen::Index j) { return j < n ? lower[j] : 0.0; };
  auto upper_of = [&](Eigen::Index j) {
    return j < n ? upper[j] : std::numeric_limits<double>::infinity();
  };

  const double feas_tol = eps * std::max(1.0, b.cwiseAbs().maxCoeff());
  const long max_iter = 400 + 40 * static_cast<long>(total) * static_cast<long>(total);

  Eigen::MatrixXd basis_mat(m, m);
  for (long iter = 0; iter < max_iter; ++iter) {
    for (Eigen::Index i = 0; i < m; ++i) {
      basis_mat.col(i) = column(basis[static_cast<std::size_t>(i)]);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_mat);

    // Recompute basic values from scratch to avoid drift.
    Eigen::VectorXd rhs = b;
    for (Eigen::Index j = 0; j < total; ++j) {
      if (state[static_cast<std::size_t>(j)] == VarState::kBasic || x[j] == 0.0) continue;
      rhs -= column(j) * x[j];
    }
    Eigen::VectorXd xb = lu.solve(rhs);
    for (Eigen::Index i = 0; i < m; ++i) x[basis[static_cast<std::size_t>(i)]] = xb[i];

    double objective = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] >= n) objective += std::abs(xb[i]);
    }
    if (objective <= feas_tol) {
      return {true, x.head(n), objective};
    }

    Eigen::VectorXd cost_b = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] >= n) cost_b[i] = 1.0;
    }
    Eigen::VectorXd y = lu.transpose().solve(cost_b);

    // Bland's rule: smallest eligible structural index enters.
    Eigen::Index entering = -1;
    bool entering_from_lower = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      const VarState s = state[static_cast<std::size_t>(j)];
      if (s == VarState::kBasic) continue;
      const double reduced = -y.dot(a.col(j));
      if (s == VarState::kAtLower && reduced < -kReducedCostTol) {
        entering = j;
        entering_from_lower = true;
        break;
      }
      if (s == VarState::kAtUpper && reduced > kReducedCostTol) {
        entering = j;
        entering_from_lower = false;
        break;
      }
    }
    if (entering < 0) {
      return {false, x.head(n), objective};  // phase-1 optimum, still infeasible
    }

    // Direction of basic variables as the entering variable moves by +t
    // (from lower) or -t (from upper).
    Eigen::VectorXd d = lu.solve(column(entering));
    if (!entering_from_lower) d = -d;

    double t_max = upper_of(entering) - lower_of(entering);
    Eigen::Index leaving_pos = -1;
    bool leaving_to_lower = true;
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index bj = basis[static_cast<std::size_t>(i)];
      double t = std::numeric_limits<double>::infinity();
      bool to_lower = true;
      if (d[i] > kPivotTol) {
        t = (x[bj] - lower_of(bj)) / d[i];
        to_lower = true;
      } else if (d[i] < -kPivotTol) {
        t = (upper_of(bj) - x[bj]) / (-d[i]);
        to_lower = false;
      } else {
        continue;
      }
      if (t < t_max - 1e-15 ||
          (t <= t_max + 1e-15 &&
           (leaving_pos < 0 || bj < basis[static_cast<std::size_t>(leaving_pos)]))) {
        if (t < t_max) t_max = std::max(t, 0.0);
        leaving_pos = i;
        leaving_to_lower = to_lower;
      }
    }

    if (leaving_pos < 0) {
      // Blocked only by the entering variable's own opposite bound: bound flip.
      state[static_cast<std::size_t>(entering)] =
          entering_from_lower ? VarState::kAtUpper : VarState::kAtLower;
      x[entering] = entering_from_lower ? upper_of(entering) : lower_of(entering);
      continue;
    }

    const Eigen::Index leaving = basis[static_cast<std::size_t>(leaving_pos)];
    x[entering] = entering_from_lower ? lower_of(entering) + t_max
                                      : upper_of(entering) - t_max;
    state[static_cast<std::size_t>(entering)] = VarState::kBasic;
    basis[static_cast<std::size_t>(leaving_pos)] = entering;
    if (leaving >= n) {
      // Artificials never re-enter: the entering scan only considers
      // structural variables.
      x[leaving] = 0.0;
      state[static_cast<std::size_t>(leaving)] = VarState::kAtLower;
    } else {
      state[static_cast<std::size_t>(leaving)] =
          leaving_to_lower ? VarState::kAtLower : VarState::kAtUpper;
      x[leaving] = leaving_to_lower ? lower_of(leaving) : upper_of(leaving);
    }
  }

  throw std::runtime_error("solve_box_feasibility: iteration limit exceeded");
}

}  // namespace armax_reach
