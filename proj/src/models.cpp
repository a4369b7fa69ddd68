#include "armax_reach/models.hpp"

#include <stdexcept>
#include <string>

namespace armax_reach {

void StateSpaceModel::validate() const {
  if (A.rows() != A.cols()) throw std::invalid_argument("ss model: A must be square");
  if (B.rows() != A.rows()) throw std::invalid_argument("ss model: B row count must equal n_x");
  if (C.cols() != A.rows()) throw std::invalid_argument("ss model: C column count must equal n_x");
  if (D.rows() != C.rows() || D.cols() != B.cols()) {
    throw std::invalid_argument("ss model: D must be n_y x n_u");
  }
  if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite()) {
    throw std::invalid_argument("ss model: entries must be finite");
  }
}

void ArmaxModel::validate() const {
  if (p < 1) throw std::invalid_argument("armax model: order p must be >= 1");
  if (static_cast<int>(a_bar.size()) != p) {
    throw std::invalid_argument("armax model: expected exactly p A_bar matrices");
  }
  if (static_cast<int>(b_bar.size()) != p + 1) {
    throw std::invalid_argument("armax model: expected exactly p+1 B_bar matrices");
  }
  for (const auto& m : a_bar) {
    if (m.rows() != n_y || m.cols() != n_y || !m.allFinite()) {
      throw std::invalid_argument("armax model: every A_bar_i must be finite n_y x n_y");
    }
  }
  for (const auto& m : b_bar) {
    if (m.rows() != n_y || m.cols() != n_utilde() || !m.allFinite()) {
      throw std::invalid_argument("armax model: every B_bar_i must be finite n_y x n_utilde");
    }
  }
}

InitialOutputs InitialOutputs::from_vectors(const std::vector<Eigen::VectorXd>& ys) {
  if (ys.empty()) throw std::invalid_argument("initial outputs: need at least one measurement");
  const Eigen::Index n_y = ys.front().size();
  InitialOutputs out;
  out.p = static_cast<int>(ys.size());
  out.n_y = n_y;
  out.stacked.resize(out.p * n_y);
  for (int i = 0; i < out.p; ++i) {
    if (ys[static_cast<std::size_t>(i)].size() != n_y) {
      throw std::invalid_argument("initial outputs: measurements must share one dimension");
    }
    out.stacked.segment(i * n_y, n_y) = ys[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Eigen::VectorXd> simulate_ss(const StateSpaceModel& ss, const Eigen::VectorXd& x0,
                                         const std::vector<Eigen::VectorXd>& u,
                                         const std::vector<Eigen::VectorXd>& w,
                                         const std::vector<Eigen::VectorXd>& v, int horizon) {
  ss.validate();
  if (horizon < 0) throw std::invalid_argument("simulate_ss: horizon must be >= 0");
  if (x0.size() != ss.n_x()) throw std::invalid_argument("simulate_ss: x0 must have length n_x");
  const std::size_t needed = static_cast<std::size_t>(horizon) + 1;
  if (u.size() < needed || w.size() < needed || v.size() < needed) {
    throw std::invalid_argument("simulate_ss: input/disturbance sequences too short");
  }

  std::vector<Eigen::VectorXd> y;
  y.reserve(needed);
  Eigen::VectorXd x = x0;
  for (int k = 0; k <= horizon; ++k) {
    const auto& uk = u[static_cast<std::size_t>(k)];
    const auto& wk = w[static_cast<std::size_t>(k)];
    const auto& vk = v[static_cast<std::size_t>(k)];
    if (uk.size() != ss.n_u() || wk.size() != ss.n_x() || vk.size() != ss.n_y()) {
      throw std::invalid_argument("simulate_ss: sequence entry dimension mismatch at step " +
                                  std::to_string(k));
    }
    y.push_back(ss.C * x + ss.D * uk + vk);
    x = ss.A * x + ss.B * uk + wk;
  }
  return y;
}

std::vector<Eigen::VectorXd> simulate_armax(const ArmaxModel& m, const InitialOutputs& y_init,
                                            const std::vector<Eigen::VectorXd>& utilde,
                                            int horizon) {
  m.validate();
  if (y_init.p != m.p || y_init.n_y != m.n_y) {
    throw std::invalid_argument("simulate_armax: y_init must hold exactly p measurements of length n_y");
  }
  if (horizon < 0) throw std::invalid_argument("simulate_armax: horizon must be >= 0");

  std::vector<Eigen::VectorXd> y;
  y.reserve(static_cast<std::size_t>(horizon) + 1);
  for (int i = 0; i < m.p && i <= horizon; ++i) y.push_back(y_init.y(i));

  if (horizon >= m.p && utilde.size() < static_cast<std::size_t>(horizon) + 1) {
    throw std::invalid_argument("simulate_armax: utilde sequence too short");
  }
  for (int k = m.p; k <= horizon; ++k) {
    Eigen::VectorXd yk = Eigen::VectorXd::Zero(m.n_y);
    for (int i = 1; i <= m.p; ++i) {
      yk += m.a_bar[static_cast<std::size_t>(i - 1)] * y[static_cast<std::size_t>(k - i)];
    }
    for (int i = 0; i <= m.p; ++i) {
      const auto& ut = utilde[static_cast<std::size_t>(k - i)];
      if (ut.size() != m.n_utilde()) {
        throw std::invalid_argument("simulate_armax: utilde entry dimension mismatch at step " +
                                    std::to_string(k - i));
      }
      yk += m.b_bar[static_cast<std::size_t>(i)] * ut;
    }
    y.push_back(yk);
  }
  return y;
}

}  // namespace armax_reach
