#include "armax_reach/conversion.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "armax_reach/errors.hpp"

namespace armax_reach {

namespace {

constexpr double kRankTol = 1e-10;

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& a, int k) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = a * out;
  return out;
}

/// Orthonormal basis of the column space of m (empty matrix for m with no
/// columns or negligible singular values).
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const double cutoff = kRankTol * std::max(1.0, svd.singularValues()(0));
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Orthonormal basis of the null space of m.
Eigen::MatrixXd null_basis(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const double cutoff =
      svd.singularValues().size() == 0 ? 0.0 : kRankTol * std::max(1.0, svd.singularValues()(0));
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace

double deadbeat_residual(const StateSpaceModel& ss, const Eigen::MatrixXd& m, int p) {
  return matrix_power(ss.A + m * ss.C, p).norm();
}

double deadbeat_tolerance(const StateSpaceModel& ss, int p) {
  return 1e-8 * std::max(1.0, std::pow(ss.A.norm(), p));
}

void validate_deadbeat(const StateSpaceModel& ss, const Eigen::MatrixXd& m, int p) {
  ss.validate();
  if (p < 1) throw std::invalid_argument("deadbeat: order p must be >= 1");
  if (m.rows() != ss.n_x() || m.cols() != ss.n_y()) {
    throw std::invalid_argument("deadbeat: M must be n_x x n_y");
  }
  const double residual = deadbeat_residual(ss, m, p);
  const double tol = deadbeat_tolerance(ss, p);
  if (!(residual <= tol)) {
    throw ConversionError("deadbeat: ||(A+MC)^" + std::to_string(p) + "||_F = " +
                              std::to_string(residual) + " exceeds tolerance " +
                              std::to_string(tol),
                          observability_index(ss));
  }
}

int observability_index(const StateSpaceModel& ss) {
  const Eigen::Index n = ss.n_x();
  Eigen::MatrixXd block = ss.C;
  Eigen::MatrixXd obs(0, n);
  for (int j = 1; j <= static_cast<int>(n); ++j) {
    Eigen::MatrixXd next(obs.rows() + block.rows(), n);
    next << obs, block;
    obs = std::move(next);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(obs);
    const double cutoff = kRankTol * std::max(1.0, svd.singularValues()(0));
    Eigen::Index rank = 0;
    while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cutoff) ++rank;
    if (rank == n) return j;
    block = block * ss.A;
  }
  return -1;
}

Eigen::MatrixXd deadbeat_gain(const StateSpaceModel& ss, int p) {
  ss.validate();
  if (p < 1) throw std::invalid_argument("deadbeat_gain: order p must be >= 1");
  const Eigen::Index n = ss.n_x();
  const Eigen::MatrixXd f = ss.A.transpose();
  const Eigen::MatrixXd g = ss.C.transpose();

  // j-step reachable subspaces of the dual pair and the flag
  // Z_j = { x : f^j x in R_j }; Z_p must fill the whole space.
  std::vector<Eigen::MatrixXd> range_q(static_cast<std::size_t>(p) + 1);
  range_q[0] = Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd reach_cols(n, 0);
  Eigen::MatrixXd f_pow_g = g;  // f^j * g while building
  for (int j = 1; j <= p; ++j) {
    Eigen::MatrixXd next(n, reach_cols.cols() + g.cols());
    next << reach_cols, f_pow_g;
    reach_cols = std::move(next);
    range_q[static_cast<std::size_t>(j)] = range_basis(reach_cols);
    f_pow_g = f * f_pow_g;
  }

  std::vector<Eigen::MatrixXd> z_basis(static_cast<std::size_t>(p) + 1);
  z_basis[0] = Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd f_pow = f;
  for (int j = 1; j <= p; ++j) {
    const Eigen::MatrixXd& q = range_q[static_cast<std::size_t>(j)];
    Eigen::MatrixXd projected = f_pow - q * (q.transpose() * f_pow);
    z_basis[static_cast<std::size_t>(j)] = null_basis(projected);
    f_pow = f * f_pow;
  }

  if (z_basis[static_cast<std::size_t>(p)].cols() != n) {
    const int minimal = observability_index(ss);
    if (minimal < 0) {
      throw ConversionError(
          "deadbeat_gain: (A, C) is unobservable; rank of the observability matrix "
          "stays below n_x at every order",
          -1);
    }
    throw ConversionError("deadbeat_gain: observability index is " + std::to_string(minimal) +
                              " but order p = " + std::to_string(p) +
                              " was requested; the rank test on O_p fails",
                          minimal);
  }

  // Basis adapted to the flag: each new direction of layer j and the dual
  // input -w that maps it into Z_{j-1}.
  Eigen::MatrixXd basis(n, n);
  Eigen::MatrixXd inputs(g.cols(), n);
  Eigen::Index filled = 0;
  Eigen::MatrixXd f_pow_left = Eigen::MatrixXd::Identity(n, n);  // f^{j-1}
  for (int j = 1; j <= p && filled < n; ++j) {
    const Eigen::MatrixXd& candidates = z_basis[static_cast<std::size_t>(j)];
    for (Eigen::Index c = 0; c < candidates.cols() && filled < n; ++c) {
      Eigen::VectorXd x = candidates.col(c);
      for (Eigen::Index t = 0; t < filled; ++t) x -= basis.col(t).dot(x) * basis.col(t);
      if (x.norm() <= 1e-8) continue;
      x.normalize();

      // f^j x = Q_{j-1} alpha + f^{j-1} g w  (consistent since x lies in Z_j)
      const Eigen::MatrixXd& q_prev = range_q[static_cast<std::size_t>(j - 1)];
      Eigen::MatrixXd lhs(n, q_prev.cols() + g.cols());
      lhs << q_prev, f_pow_left * g;
      Eigen::VectorXd rhs = f * (f_pow_left * x);
      Eigen::VectorXd sol = lhs.completeOrthogonalDecomposition().solve(rhs);
      basis.col(filled) = x;
      inputs.col(filled) = -sol.tail(g.cols());
      ++filled;
    }
    f_pow_left = f * f_pow_left;
  }

  if (filled != n) {
    throw ConversionError("deadbeat_gain: failed to assemble a flag-adapted basis", p);
  }

  const Eigen::MatrixXd k = inputs * basis.inverse();
  Eigen::MatrixXd m = k.transpose();
  validate_deadbeat(ss, m, p);
  return m;
}

ArmaxModel ss_to_armax(const StateSpaceModel& ss, const Eigen::MatrixXd& m, int p) {
  validate_deadbeat(ss, m, p);
  const Eigen::Index n_x = ss.n_x(), n_u = ss.n_u(), n_y = ss.n_y();
  const Eigen::Index n_ut = n_u + n_x + n_y;

  Eigen::MatrixXd b_ut(n_x, n_ut);  // [B I 0]
  b_ut << ss.B, Eigen::MatrixXd::Identity(n_x, n_x), Eigen::MatrixXd::Zero(n_x, n_y);
  Eigen::MatrixXd d_ut(n_y, n_ut);  // [D 0 I]
  d_ut << ss.D, Eigen::MatrixXd::Zero(n_y, n_x), Eigen::MatrixXd::Identity(n_y, n_y);

  const Eigen::MatrixXd closed = ss.A + m * ss.C;
  const Eigen::MatrixXd forced = b_ut + m * d_ut;

  ArmaxModel out;
  out.p = p;
  out.n_y = n_y;
  out.n_u = n_u;
  out.n_w = n_x;
  out.n_v = n_y;
  Eigen::MatrixXd closed_pow = Eigen::MatrixXd::Identity(n_x, n_x);
  for (int i = 1; i <= p; ++i) {
    out.a_bar.push_back(-ss.C * closed_pow * m);
    closed_pow = closed * closed_pow;
  }
  out.b_bar.push_back(d_ut);
  closed_pow = Eigen::MatrixXd::Identity(n_x, n_x);
  for (int i = 1; i <= p; ++i) {
    out.b_bar.push_back(ss.C * closed_pow * forced);
    closed_pow = closed * closed_pow;
  }
  out.validate();
  return out;
}

}  // namespace armax_reach
