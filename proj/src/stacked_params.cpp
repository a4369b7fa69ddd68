#include "armax_reach/stacked_params.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace armax_reach {

Eigen::MatrixXd StackedParams::b_ext_at(int i) const {
  if (i < 0 || i > p) return Eigen::MatrixXd::Zero(stacked_dim(), n_utilde);
  return b_ext[static_cast<std::size_t>(i)];
}

Eigen::MatrixXd StackedParams::companion_apply(const Eigen::MatrixXd& x) const {
  const Eigen::Index pn = stacked_dim();
  if (x.rows() != pn) {
    throw std::invalid_argument("companion_apply: operand must have p*n_y rows");
  }
  Eigen::MatrixXd out(pn, x.cols());
  if (p > 1) out.topRows(pn - n_y) = x.bottomRows(pn - n_y);
  out.bottomRows(n_y) = a_ext.bottomRows(n_y) * x;
  return out;
}

Eigen::MatrixXd StackedParams::companion_apply_power(Eigen::MatrixXd x, int times) const {
  for (int i = 0; i < times; ++i) x = companion_apply(x);
  return x;
}

StackedParams build_extended(const ArmaxModel& m) {
  m.validate();
  StackedParams sp;
  sp.p = m.p;
  sp.n_y = m.n_y;
  sp.n_utilde = m.n_utilde();
  const Eigen::Index pn = sp.stacked_dim();

  sp.a_ext = Eigen::MatrixXd::Zero(pn, pn);
  for (int i = 0; i + 1 < m.p; ++i) {
    sp.a_ext.block(i * m.n_y, (i + 1) * m.n_y, m.n_y, m.n_y) =
        Eigen::MatrixXd::Identity(m.n_y, m.n_y);
  }
  for (int j = 0; j < m.p; ++j) {
    // bottom block row is [A_bar_p  A_bar_{p-1} ... A_bar_1]
    sp.a_ext.block((m.p - 1) * m.n_y, j * m.n_y, m.n_y, m.n_y) =
        m.a_bar[static_cast<std::size_t>(m.p - 1 - j)];
  }

  sp.b_ext.reserve(static_cast<std::size_t>(m.p) + 1);
  for (int i = 0; i <= m.p; ++i) {
    Eigen::MatrixXd bi = Eigen::MatrixXd::Zero(pn, sp.n_utilde);
    bi.bottomRows(m.n_y) = m.b_bar[static_cast<std::size_t>(i)];
    sp.b_ext.push_back(std::move(bi));
  }

  sp.k = 0;
  sp.a_tilde = Eigen::MatrixXd::Identity(pn, pn);
  return sp;
}

StackedParams params_direct(const StackedParams& sp, int k) {
  if (k < 1) throw std::invalid_argument("params_direct: step k must be >= 1");
  StackedParams out = sp;
  out.k = k;
  out.b_tilde.clear();

  // powers[j] = A_ext^j applied to the bottom block columns, i.e. the only
  // part of A_ext^j that B_ext can see.
  const Eigen::Index pn = sp.stacked_dim();
  std::vector<Eigen::MatrixXd> powers(static_cast<std::size_t>(k));
  Eigen::MatrixXd cur = Eigen::MatrixXd::Zero(pn, sp.n_y);
  cur.bottomRows(sp.n_y) = Eigen::MatrixXd::Identity(sp.n_y, sp.n_y);
  for (int j = 0; j < k; ++j) {
    powers[static_cast<std::size_t>(j)] = cur;
    cur = sp.companion_apply(cur);
  }

  out.a_tilde = sp.companion_apply_power(Eigen::MatrixXd::Identity(pn, pn), k);

  const int k_plus = k + sp.p - 1;
  for (int i = 0; i <= k_plus; ++i) {
    Eigen::MatrixXd bi = Eigen::MatrixXd::Zero(pn, sp.n_utilde);
    const int j_lo = std::max(0, i - sp.p);
    const int j_hi = std::min(k - 1, i);
    for (int j = j_lo; j <= j_hi; ++j) {
      // A_ext^j B_ext_{i-j} touches only the bottom n_y rows of B_ext.
      bi += powers[static_cast<std::size_t>(j)] *
            sp.b_ext[static_cast<std::size_t>(i - j)].bottomRows(sp.n_y);
    }
    out.b_tilde[i] = std::move(bi);
  }
  return out;
}

StackedParams advance_params(const StackedParams& sp, int delta_k) {
  if (delta_k < 0) throw std::invalid_argument("advance_params: delta_k must be >= 0");
  if (sp.k < 1) throw std::invalid_argument("advance_params: parameters not initialized");
  StackedParams out = sp;
  out.k = sp.k + delta_k;
  out.a_tilde = sp.companion_apply_power(sp.a_tilde, delta_k);
  out.b_tilde.clear();
  const int i_max = out.k + sp.p - 1;
  for (int i = sp.p + delta_k; i <= i_max; ++i) {
    auto it = sp.b_tilde.find(i - delta_k);
    if (it == sp.b_tilde.end()) {
      throw std::invalid_argument("advance_params: B_tilde_" + std::to_string(i - delta_k) +
                                  " not available at step " + std::to_string(sp.k));
    }
    out.b_tilde[i] = sp.companion_apply_power(it->second, delta_k);
  }
  return out;
}

bool frozen_param_check(const StackedParams& sp, int i, int k, int delta_k) {
  if (i < 0 || i >= k || delta_k < 0 || k < 1) {
    throw std::invalid_argument("frozen_param_check: requires 0 <= i < k and delta_k >= 0");
  }
  const StackedParams at_k = params_direct(sp, k);
  const StackedParams at_later = params_direct(sp, k + delta_k);
  const Eigen::MatrixXd& a = at_k.b_tilde.at(i);
  const Eigen::MatrixXd& b = at_later.b_tilde.at(i);
  return (a - b).cwiseAbs().maxCoeff() <= 1e-12;
}

Eigen::MatrixXd step_param(const StackedParams& sp, int i) {
  auto it = sp.b_tilde.find(i);
  if (it == sp.b_tilde.end()) {
    throw std::invalid_argument("step_param: B_tilde_" + std::to_string(i) +
                                " not available at step " + std::to_string(sp.k));
  }
  Eigen::MatrixXd out = sp.companion_apply(it->second) + sp.b_ext_at(i + 1);
  const int tail = i + 1 - sp.k;
  if (tail >= 0 && tail <= sp.p) {
    // Only the bottom block columns of A_ext^k act on B_ext.
    out -= sp.a_tilde.rightCols(sp.n_y) *
           sp.b_ext[static_cast<std::size_t>(tail)].bottomRows(sp.n_y);
  }
  return out;
}

Eigen::VectorXd stacked_block(const Eigen::VectorXd& stacked, int i, Eigen::Index n_y) {
  return stacked.segment(static_cast<Eigen::Index>(i) * n_y, n_y);
}

}  // namespace armax_reach
