#include "armax_reach/reach.hpp"

#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>

#include "armax_reach/errors.hpp"

namespace armax_reach {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_initial_outputs(const ArmaxModel& m, const InitialOutputs& y_init) {
  if (y_init.p != m.p || y_init.n_y != m.n_y) {
    throw std::invalid_argument("reach: y_init must hold exactly p measurements of length n_y");
  }
}

void check_channels(const ArmaxModel& m, const UncertaintySpec& spec) {
  if (spec.n_u() != m.n_u || spec.n_w() != m.n_w || spec.n_v() != m.n_v) {
    throw std::invalid_argument(
        "reach: uncertainty channel dimensions must match the model (u/w/v)");
  }
}

/// Shared parameter bookkeeping of the two iterative engines: the companion
/// power chain restricted to the bottom block columns (all that B_ext can
/// see) and the B_tilde slots the algorithms refresh in place.
struct ParamWorkspace {
  StackedParams sp;
  std::vector<Eigen::MatrixXd> pow_cols;  // pow_cols[j] = A_ext^j (bottom block columns)
  std::vector<Eigen::MatrixXd> bt;        // B_tilde slots, index 0..k_init+p-1
  Eigen::MatrixXd a_tilde;                // A_ext^{k_init}
  Eigen::MatrixXd a_pow_cur;              // A_ext^{current k}
  Eigen::MatrixXd prod;                   // scratch for B_tilde * G products

  explicit ParamWorkspace(const ArmaxModel& m, int k_init) : sp(build_extended(m)) {
    const Eigen::Index pn = sp.stacked_dim();
    extend_pows(0);
    a_tilde = sp.companion_apply_power(Eigen::MatrixXd::Identity(pn, pn), k_init);
    a_pow_cur = a_tilde;

    const int k_plus = k_init + sp.p - 1;
    bt.resize(static_cast<std::size_t>(k_plus) + 1);
    bt[0] = direct_b(0, k_init);
    for (int i = 1; i <= k_plus; ++i) {
      bt[static_cast<std::size_t>(i)] = recurse_b(i, k_init, a_tilde);
    }
  }

  void extend_pows(int j_max) {
    const Eigen::Index pn = sp.stacked_dim();
    if (pow_cols.empty()) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(pn, sp.n_y);
      e.bottomRows(sp.n_y) = Eigen::MatrixXd::Identity(sp.n_y, sp.n_y);
      pow_cols.push_back(std::move(e));
    }
    while (static_cast<int>(pow_cols.size()) <= j_max) {
      pow_cols.push_back(sp.companion_apply(pow_cols.back()));
    }
  }

  /// B_tilde_i(k) from its defining sum.
  Eigen::MatrixXd direct_b(int i, int k) {
    Eigen::MatrixXd bi = Eigen::MatrixXd::Zero(sp.stacked_dim(), sp.n_utilde);
    const int j_lo = std::max(0, i - sp.p);
    const int j_hi = std::min(k - 1, i);
    if (j_hi >= j_lo) extend_pows(j_hi);
    for (int j = j_lo; j <= j_hi; ++j) {
      bi += pow_cols[static_cast<std::size_t>(j)] *
            sp.b_ext[static_cast<std::size_t>(i - j)].bottomRows(sp.n_y);
    }
    return bi;
  }

  /// B_tilde_i(k) from B_tilde_{i-1}(k); a_pow must hold A_ext^k.
  Eigen::MatrixXd recurse_b(int i, int k, const Eigen::MatrixXd& a_pow) {
    Eigen::MatrixXd out = sp.companion_apply(bt[static_cast<std::size_t>(i - 1)]);
    if (i <= sp.p) out += sp.b_ext[static_cast<std::size_t>(i)];
    const int tail = i - k;
    if (tail >= 0 && tail <= sp.p) {
      out -= a_pow.rightCols(sp.n_y) *
             sp.b_ext[static_cast<std::size_t>(tail)].bottomRows(sp.n_y);
    }
    return out;
  }
};

}  // namespace

const SymbolicZonotope& ReachResult::set_at(int k) const {
  const int idx = k - first_k;
  if (idx < 0 || idx >= static_cast<int>(sets.size())) {
    throw std::out_of_range("reach result: no set stored for step " + std::to_string(k));
  }
  return sets[static_cast<std::size_t>(idx)];
}

const IntervalHull& ReachResult::hull_at(int k) const {
  const int idx = k - first_k;
  if (idx < 0 || idx >= static_cast<int>(hulls.size())) {
    throw std::out_of_range("reach result: no hull stored for step " + std::to_string(k));
  }
  return hulls[static_cast<std::size_t>(idx)];
}

namespace detail {

GrowableSet::GrowableSet(Eigen::VectorXd center)
    : center_(std::move(center)), gens_(center_.size(), 0),
      abs_sum_(Eigen::VectorXd::Zero(center_.size())) {}

void GrowableSet::reserve(Eigen::Index extra) {
  const Eigen::Index need = used_ + extra;
  if (need <= gens_.cols()) return;
  Eigen::Index capacity = std::max<Eigen::Index>(16, gens_.cols());
  while (capacity < need) capacity *= 2;
  Eigen::MatrixXd bigger(center_.size(), capacity);
  bigger.leftCols(used_) = gens_.leftCols(used_);
  gens_ = std::move(bigger);
}

void GrowableSet::append(const Eigen::MatrixXd& cols, const std::vector<Label>& labels) {
  if (cols.rows() != center_.size() ||
      static_cast<std::size_t>(cols.cols()) != labels.size()) {
    throw std::invalid_argument("growable set: appended block shape mismatch");
  }
  reserve(cols.cols());
  gens_.middleCols(used_, cols.cols()) = cols;
  labels_.insert(labels_.end(), labels.begin(), labels.end());
  used_ += cols.cols();
  abs_sum_ += cols.cwiseAbs().rowwise().sum();
}

void GrowableSet::add_term(const Eigen::MatrixXd& map, const SymbolicZonotope& z) {
  add_term_raw(map, z.center(), z.generators(), z.labels());
}

void GrowableSet::add_term_raw(const Eigen::MatrixXd& map, const Eigen::VectorXd& c,
                               const Eigen::MatrixXd& g, std::vector<Label> labels) {
  center_.noalias() += map * c;
  reserve(g.cols());
  auto block = gens_.middleCols(used_, g.cols());
  block.noalias() = map * g;
  abs_sum_ += block.cwiseAbs().rowwise().sum();
  labels_.insert(labels_.end(), labels.begin(), labels.end());
  used_ += g.cols();
}

void GrowableSet::append_from(const GrowableSet& other, const std::vector<Label>& labels) {
  center_ += other.center_;
  append(other.gens_.leftCols(other.used_), labels);
}

void GrowableSet::companion_transform(const StackedParams& sp, int times) {
  const Eigen::Index pn = center_.size();
  const Eigen::Index n_y = sp.n_y;
  if (bottom_scratch_.rows() != n_y || bottom_scratch_.cols() < used_) {
    bottom_scratch_.resize(n_y, gens_.cols());
  }
  const auto bottom_row = sp.a_ext.bottomRows(n_y);
  for (int t = 0; t < times; ++t) {
    bottom_scratch_.leftCols(used_).noalias() = bottom_row * gens_.leftCols(used_);
    Eigen::VectorXd center_bottom = bottom_row * center_;
    // Shift block rows up by one; ascending row order keeps reads ahead of
    // writes for any p.
    for (Eigen::Index r = 0; r + n_y < pn; ++r) {
      gens_.row(r).head(used_) = gens_.row(r + n_y).head(used_);
      center_[r] = center_[r + n_y];
    }
    gens_.block(pn - n_y, 0, n_y, used_) = bottom_scratch_.leftCols(used_);
    center_.tail(n_y) = center_bottom;
  }
  abs_sum_ = gens_.leftCols(used_).cwiseAbs().rowwise().sum();
}

SymbolicZonotope GrowableSet::snapshot() const {
  return SymbolicZonotope::trusted(center_, gens_.leftCols(used_), labels_);
}

}  // namespace detail

namespace {

/// Per-step emission shared by all engines: slice a stacked set/hull into
/// blocks and keep the steps inside the requested range.
void emit_stacked(ReachResult& res, const SymbolicZonotope* stacked,
                  const IntervalHull& stacked_hull, int k, int p, Eigen::Index n_y,
                  int last_step, bool collect_sets) {
  for (int j = 0; j < p; ++j) {
    const int step = k + j;
    if (step > last_step) break;
    res.hulls.push_back({stacked_hull.lower.segment(j * n_y, n_y),
                         stacked_hull.upper.segment(j * n_y, n_y)});
    if (collect_sets && stacked != nullptr) {
      res.sets.push_back(SymbolicZonotope::trusted(
          stacked->center().segment(j * n_y, n_y),
          stacked->generators().middleRows(j * n_y, n_y), stacked->labels()));
    }
  }
}

ReachResult reach_recursion_impl(const ArmaxModel& m, const InitialOutputs& y_init,
                                 UncertaintySpec& spec, int k_h, const ReachOptions& options,
                                 bool exact, const char* tag) {
  m.validate();
  check_initial_outputs(m, y_init);
  check_channels(m, spec);
  if (k_h < 0) throw std::invalid_argument("reach: horizon k_h must be >= 0");

  const int last = m.p + k_h;
  std::vector<SymbolicZonotope> y(static_cast<std::size_t>(last) + 1);
  for (int i = 0; i < m.p; ++i) {
    y[static_cast<std::size_t>(i)] = SymbolicZonotope::point(y_init.y(i));
  }

  ReachResult res;
  res.method = tag;
  res.first_k = m.p;
  for (int k = m.p; k <= last; ++k) {
    const auto t0 = Clock::now();
    SymbolicZonotope acc;
    bool first = true;
    auto add_term = [&](SymbolicZonotope term) {
      if (first) {
        acc = std::move(term);
        first = false;
      } else if (exact) {
        acc = exact_add(acc, term);
      } else {
        acc = minkowski_sum(acc, relabel_fresh(term, spec.registry()));
      }
    };
    for (int i = 1; i <= m.p; ++i) {
      add_term(linear_map(m.a_bar[static_cast<std::size_t>(i - 1)],
                          y[static_cast<std::size_t>(k - i)]));
    }
    for (int i = 0; i <= m.p; ++i) {
      add_term(linear_map(m.b_bar[static_cast<std::size_t>(i)], spec.combined(k - i)));
    }
    y[static_cast<std::size_t>(k)] = std::move(acc);
    res.iteration_seconds.push_back(seconds_since(t0));
    res.hulls.push_back(interval_hull(y[static_cast<std::size_t>(k)]));
    if (options.collect_sets) res.sets.push_back(y[static_cast<std::size_t>(k)]);
  }
  return res;
}

}  // namespace

ReachResult reach_dependent(const ArmaxModel& m, const InitialOutputs& y_init,
                            UncertaintySpec& spec, int k_h, const ReachOptions& options) {
  return reach_recursion_impl(m, y_init, spec, k_h, options, true, "ARMAX");
}

ReachResult reach_dependent_dp(const ArmaxModel& m, const InitialOutputs& y_init,
                               UncertaintySpec& spec, int k_h, const ReachOptions& options) {
  return reach_recursion_impl(m, y_init, spec, k_h, options, false, "ARMAX-DP");
}

SymbolicZonotope reach_oneshot(const ArmaxModel& m, const InitialOutputs& y_init,
                               UncertaintySpec& spec, int k) {
  m.validate();
  check_initial_outputs(m, y_init);
  check_channels(m, spec);
  if (k < m.p) throw std::invalid_argument("reach_oneshot: step k must be >= p");

  const StackedParams tv = params_direct(build_extended(m), k);
  const int k_plus = k + m.p - 1;
  SymbolicZonotope stacked = SymbolicZonotope::point(tv.a_tilde * y_init.stacked);
  for (int i = 0; i <= k_plus; ++i) {
    stacked = minkowski_sum(stacked, linear_map(tv.b_tilde.at(i), spec.combined(k_plus - i)));
  }
  return stacked;
}

std::vector<SymbolicZonotope> unstack(const SymbolicZonotope& stacked, int p) {
  if (p < 1 || stacked.dim() % p != 0) {
    throw std::invalid_argument("unstack: set dimension must be a multiple of p");
  }
  const Eigen::Index n_y = stacked.dim() / p;
  std::vector<SymbolicZonotope> out;
  out.reserve(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    out.push_back(SymbolicZonotope::trusted(stacked.center().segment(j * n_y, n_y),
                                            stacked.generators().middleRows(j * n_y, n_y),
                                            stacked.labels()));
  }
  return out;
}

ReachResult reach_alg1(const ArmaxModel& m, const InitialOutputs& y_init,
                       UncertaintySpec& spec, int k_init, int k_h,
                       const ReachOptions& options) {
  m.validate();
  check_initial_outputs(m, y_init);
  check_channels(m, spec);
  if (k_init < m.p) throw std::invalid_argument("reach_alg1: k_init must be >= p");
  if (k_h < 0) throw std::invalid_argument("reach_alg1: horizon k_h must be >= 0");

  const int p = m.p;
  ParamWorkspace ws(m, k_init);
  const StackedParams& sp = ws.sp;
  int k = k_init;
  int k_plus = k_init + p - 1;

  // Engine-internal sums concatenate directly: every summed set carries the
  // labels of a distinct (channel, step) pair, so operands are disjoint.
  detail::GrowableSet s(ws.a_tilde * y_init.stacked);
  for (int i = p; i <= k_plus; ++i) {
    s.add_term(ws.bt[static_cast<std::size_t>(i)], spec.combined(k_plus - i));
  }

  ReachResult res;
  res.method = "ARMAX-ALG1";
  res.first_k = k_init;
  const int last = p + k_h;
  // The emitted block is S plus the fresh-step terms; accumulate their hull
  // contribution without materializing the stacked set unless asked to.
  Eigen::VectorXd emit_center(sp.stacked_dim()), emit_abs(sp.stacked_dim());
  while (k <= last) {
    const auto t0 = Clock::now();
    emit_center = s.center();
    emit_abs = s.abs_sum();
    std::vector<const SymbolicZonotope*> term_sets;
    for (int i = 0; i < p; ++i) {
      const SymbolicZonotope& ut = spec.combined(k_plus - i);
      const Eigen::MatrixXd& bi = ws.bt[static_cast<std::size_t>(i)];
      ws.prod.resize(sp.stacked_dim(), ut.num_generators());
      ws.prod.noalias() = bi * ut.generators();
      emit_center.noalias() += bi * ut.center();
      emit_abs += ws.prod.cwiseAbs().rowwise().sum();
      term_sets.push_back(&ut);
    }
    const IntervalHull stacked_hull{emit_center - emit_abs, emit_center + emit_abs};
    if (options.collect_sets) {
      detail::GrowableSet yt(s.center());
      yt.append(s.generators(), s.labels());
      for (int i = 0; i < p; ++i) {
        yt.add_term(ws.bt[static_cast<std::size_t>(i)], *term_sets[static_cast<std::size_t>(i)]);
      }
      const SymbolicZonotope stacked = yt.snapshot();
      emit_stacked(res, &stacked, stacked_hull, k, p, sp.n_y, last, true);
    } else {
      emit_stacked(res, nullptr, stacked_hull, k, p, sp.n_y, last, false);
    }

    k += p;
    k_plus += p;
    ws.a_pow_cur = sp.companion_apply_power(ws.a_pow_cur, p);
    if (k < 3 * p) {
      ws.bt[static_cast<std::size_t>(p)] = ws.direct_b(p, k);
      for (int i = p + 1; i <= 2 * p - 1; ++i) {
        ws.bt[static_cast<std::size_t>(i)] = ws.recurse_b(i, k, ws.a_pow_cur);
      }
    }
    s.companion_transform(sp, p);
    for (int i = p; i <= 2 * p - 1; ++i) {
      s.add_term(ws.bt[static_cast<std::size_t>(i)], spec.combined(k_plus - i));
    }
    res.iteration_seconds.push_back(seconds_since(t0));
  }
  return res;
}

ReachResult reach_alg2(const ArmaxModel& m, const InitialOutputs& y_init,
                       UncertaintySpec& spec, int k_init, int k_h,
                       const ReachOptions& options) {
  m.validate();
  check_initial_outputs(m, y_init);
  check_channels(m, spec);
  if (k_init < m.p) throw std::invalid_argument("reach_alg2: k_init must be >= p");
  if (k_h < 0) throw std::invalid_argument("reach_alg2: horizon k_h must be >= 0");
  if (!spec.has_decomposition()) {
    throw std::invalid_argument("reach_alg2: uncertainty spec provides no U_c + u_v decomposition");
  }

  const int p = m.p;
  const InputDecomposition& dec = spec.decomposition();
  const Zonotope& uc = dec.u_c;
  const Eigen::Index q_c = uc.generators.cols();
  LabelRegistry& reg = spec.registry();

  ParamWorkspace ws(m, k_init);
  const StackedParams& sp = ws.sp;
  const Eigen::Index pn = sp.stacked_dim();
  int k = k_init;
  int k_plus = k_init + p - 1;

  auto uc_terms = [&](detail::GrowableSet& dst, int i_lo, int i_hi) {
    // B_tilde_i applied to a fresh occurrence of the constant set, per index.
    for (int i = i_lo; i <= i_hi; ++i) {
      dst.add_term_raw(ws.bt[static_cast<std::size_t>(i)], uc.center, uc.generators,
                       reg.fresh_block(q_c));
    }
  };

  Alg2State st{detail::GrowableSet(Eigen::VectorXd::Zero(pn)),
               detail::GrowableSet(Eigen::VectorXd::Zero(pn)), std::nullopt,
               Eigen::VectorXd::Zero(pn), k, k_plus};
  for (int i = 0; i < k; ++i) {
    st.s_c.add_term_raw(ws.bt[static_cast<std::size_t>(i)], uc.center, uc.generators,
                        reg.fresh_block(q_c));
  }
  uc_terms(st.t_c1, k, k_plus);
  st.s_v = ws.a_tilde * y_init.stacked;
  for (int i = p; i <= k_plus; ++i) {
    st.s_v += ws.bt[static_cast<std::size_t>(i)] * dec.u_v_at(k_plus - i);
  }

  ReachResult res;
  res.method = "ARMAX-ALG2";
  res.first_k = k_init;
  const int last = p + k_h;
  while (k <= last) {
    const auto t0 = Clock::now();
    Eigen::VectorXd y_v = st.s_v;
    for (int i = 0; i < p; ++i) {
      y_v += ws.bt[static_cast<std::size_t>(i)] * dec.u_v_at(k_plus - i);
    }
    const IntervalHull stacked_hull{
        y_v + st.s_c.center() + st.t_c1.center() - st.s_c.abs_sum() - st.t_c1.abs_sum(),
        y_v + st.s_c.center() + st.t_c1.center() + st.s_c.abs_sum() + st.t_c1.abs_sum()};
    if (options.collect_sets) {
      detail::GrowableSet yt(y_v + st.s_c.center() + st.t_c1.center());
      yt.append(st.s_c.generators(), st.s_c.labels());
      // The emitted copy of T_c1 is an independent occurrence; relabel it.
      yt.append(st.t_c1.generators(), reg.fresh_block(st.t_c1.cols()));
      const SymbolicZonotope stacked = yt.snapshot();
      emit_stacked(res, &stacked, stacked_hull, k, p, sp.n_y, last, true);
    } else {
      emit_stacked(res, nullptr, stacked_hull, k, p, sp.n_y, last, false);
    }

    k += p;
    k_plus += p;
    st.k = k;
    st.k_plus = k_plus;
    ws.a_pow_cur = sp.companion_apply_power(ws.a_pow_cur, p);
    if (k < 3 * p) {
      ws.bt[static_cast<std::size_t>(p)] = ws.direct_b(p, k);
      for (int i = p + 1; i <= 2 * p - 1; ++i) {
        ws.bt[static_cast<std::size_t>(i)] = ws.recurse_b(i, k, ws.a_pow_cur);
      }
    }
    if (k == k_init + p) {
      if (k_init > p) {
        // T_c2 needs B_tilde_i(k_init + p) for i = k_init .. k_init+p-1; the
        // k < 3p guard only refreshes i <= 2p-1, which covers that range
        // exactly when k_init == p. Refresh the exact range otherwise.
        for (int i = k - p; i <= k_plus - p; ++i) {
          ws.bt[static_cast<std::size_t>(i)] = ws.direct_b(i, k);
        }
      }
      st.t_c2.emplace(Eigen::VectorXd::Zero(pn));
      uc_terms(*st.t_c2, k - p, k_plus - p);
    }
    st.s_c.append_from(*st.t_c2, reg.fresh_block(st.t_c2->cols()));
    st.t_c1.companion_transform(sp, p);
    st.t_c2->companion_transform(sp, p);
    st.s_v = sp.companion_apply_power(st.s_v, p);
    for (int i = p; i <= 2 * p - 1; ++i) {
      st.s_v += ws.bt[static_cast<std::size_t>(i)] * dec.u_v_at(k_plus - i);
    }
    res.aux_generator_counts.push_back({st.t_c1.cols(), st.t_c2->cols()});
    res.iteration_seconds.push_back(seconds_since(t0));
  }
  return res;
}

SymbolicZonotope reach_ss(const StateSpaceModel& ss, const SymbolicZonotope& x0,
                          UncertaintySpec& spec, int k) {
  ss.validate();
  if (x0.dim() != ss.n_x()) {
    throw std::invalid_argument("reach_ss: X0 dimension must equal n_x");
  }
  if (spec.n_u() != ss.n_u() || spec.n_w() != ss.n_x() || spec.n_v() != ss.n_y()) {
    throw std::invalid_argument("reach_ss: channel dimensions must match the SS model");
  }
  if (k < 0) throw std::invalid_argument("reach_ss: step must be >= 0");

  using Channel = UncertaintySpec::Channel;
  Eigen::MatrixXd a_pow = Eigen::MatrixXd::Identity(ss.n_x(), ss.n_x());
  for (int i = 0; i < k; ++i) a_pow = ss.A * a_pow;

  SymbolicZonotope y = linear_map(ss.C * a_pow, x0);
  Eigen::MatrixXd ca = ss.C;  // C A^{i-1}
  for (int i = 1; i <= k; ++i) {
    SymbolicZonotope step = minkowski_sum(
        linear_map(ss.B, spec.channel_set(Channel::kU, k - i)),
        spec.channel_set(Channel::kW, k - i));
    y = minkowski_sum(y, linear_map(ca, step));
    ca = ca * ss.A;
  }
  y = minkowski_sum(y, linear_map(ss.D, spec.channel_set(Channel::kU, k)));
  y = minkowski_sum(y, spec.channel_set(Channel::kV, k));
  return y;
}

SymbolicZonotope estimate_initial_state_set(const StateSpaceModel& ss,
                                            const InitialOutputs& y_init,
                                            UncertaintySpec& spec, int p) {
  ss.validate();
  if (p < 1) throw std::invalid_argument("estimate_initial_state_set: p must be >= 1");
  if (y_init.p != p || y_init.n_y != ss.n_y()) {
    throw std::invalid_argument("estimate_initial_state_set: y_init must hold p measurements");
  }
  if (spec.n_u() != ss.n_u() || spec.n_w() != ss.n_x() || spec.n_v() != ss.n_y()) {
    throw std::invalid_argument("estimate_initial_state_set: channel dimensions mismatch");
  }

  using Channel = UncertaintySpec::Channel;
  const Eigen::Index n_x = ss.n_x(), n_y = ss.n_y();

  Eigen::MatrixXd obs(p * n_y, n_x);
  Eigen::MatrixXd ca = ss.C;
  for (int j = 0; j < p; ++j) {
    obs.middleRows(j * n_y, n_y) = ca;
    ca = ca * ss.A;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(obs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cutoff = 1e-10 * svd.singularValues()(0);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cutoff) ++rank;
  if (rank < n_x) {
    throw EstimationError("estimate_initial_state_set: observability matrix O_" +
                          std::to_string(p) + " has rank " + std::to_string(rank) +
                          " < n_x = " + std::to_string(n_x));
  }
  Eigen::VectorXd inv_sigma = svd.singularValues().head(rank).cwiseInverse();
  Eigen::MatrixXd pinv = svd.matrixV().leftCols(rank) * inv_sigma.asDiagonal() *
                         svd.matrixU().leftCols(rank).transpose();

  const Eigen::MatrixXd minus_id = -Eigen::MatrixXd::Identity(n_y, n_y);
  SymbolicZonotope neg_stack;
  for (int j = 0; j < p; ++j) {
    SymbolicZonotope h = minkowski_sum(linear_map(ss.D, spec.channel_set(Channel::kU, j)),
                                       spec.channel_set(Channel::kV, j));
    Eigen::MatrixXd cai = ss.C;
    for (int i = 1; i <= j; ++i) {
      SymbolicZonotope step = minkowski_sum(
          linear_map(ss.B, spec.channel_set(Channel::kU, j - i)),
          spec.channel_set(Channel::kW, j - i));
      h = minkowski_sum(h, linear_map(cai, step));
      cai = cai * ss.A;
    }
    SymbolicZonotope neg_h = linear_map(minus_id, h);
    neg_stack = j == 0 ? std::move(neg_h) : cartesian_product(neg_stack, neg_h);
  }

  SymbolicZonotope x0 = linear_map(pinv, translate(neg_stack, y_init.stacked));
  return relabel_fresh(x0, spec.registry());
}

}  // namespace armax_reach
