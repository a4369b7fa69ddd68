#include "armax_reach/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#ifdef __GLIBC__
#include <malloc.h>
#endif
#include <memory>
#include <thread>

#include <Eigen/Eigenvalues>

#include "armax_reach/errors.hpp"
#include "armax_reach/reach.hpp"
#include "armax_reach/sampling.hpp"
#include "armax_reach/stacked_params.hpp"

namespace armax_reach {

namespace {

using Clock = std::chrono::steady_clock;

Eigen::MatrixXd random_matrix(const CounterRng& rng, std::uint64_t tag, Eigen::Index rows,
                              Eigen::Index cols, double scale) {
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = scale * rng.uniform_pm1(tag, static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(c));
    }
  }
  return out;
}

double companion_spectral_radius(const ArmaxModel& m) {
  const StackedParams sp = build_extended(m);
  Eigen::EigenSolver<Eigen::MatrixXd> eig(sp.a_ext, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

int env_thread_count() {
  const char* raw = std::getenv("ARMAX_REACH_THREADS");
  if (raw == nullptr) return 1;
  const int n = std::atoi(raw);
  return n < 1 ? 1 : n;
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, int f_n, int p, int set_order,
                               bool vary_signal, int signal_steps) {
  if (f_n < 1 || p < 1 || set_order < 1) {
    throw std::invalid_argument("random_instance: f_n, p and set_order must be >= 1");
  }
  const CounterRng rng{seed};
  const Eigen::Index n_y = 2 * f_n;
  const Eigen::Index n_u = f_n, n_w = f_n, n_v = f_n;  // n_utilde = 3 f_n

  RandomInstance inst;
  ArmaxModel& m = inst.model;
  m.p = p;
  m.n_y = n_y;
  m.n_u = n_u;
  m.n_w = n_w;
  m.n_v = n_v;
  for (int i = 0; i < p; ++i) {
    m.a_bar.push_back(random_matrix(rng, 100 + static_cast<std::uint64_t>(i), n_y, n_y, 1.0));
  }
  for (int i = 0; i <= p; ++i) {
    m.b_bar.push_back(
        random_matrix(rng, 200 + static_cast<std::uint64_t>(i), n_y, m.n_utilde(), 0.5));
  }
  // Scaling A_bar_i by s^i scales the companion spectrum by s.
  const double rho = companion_spectral_radius(m);
  if (rho > 0.95) {
    const double s = 0.95 / rho;
    double si = 1.0;
    for (int i = 0; i < p; ++i) {
      si *= s;
      m.a_bar[static_cast<std::size_t>(i)] *= si;
    }
  }

  for (int i = 0; i < p; ++i) {
    Eigen::VectorXd y0(n_y);
    for (Eigen::Index j = 0; j < n_y; ++j) {
      y0[j] = rng.uniform_pm1(300 + static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j), 0);
    }
    inst.y_init.push_back(std::move(y0));
  }

  const double gen_scale = 0.3 / static_cast<double>(set_order);
  Eigen::MatrixXd gu = random_matrix(rng, 400, n_u, set_order * n_u, gen_scale);
  Eigen::MatrixXd gw = random_matrix(rng, 401, n_w, set_order * n_w, gen_scale);
  Eigen::MatrixXd gv = random_matrix(rng, 402, n_v, set_order * n_v, gen_scale);
  Eigen::VectorXd cu = random_matrix(rng, 403, n_u, 1, 0.5).col(0);
  Eigen::VectorXd cw = random_matrix(rng, 404, n_w, 1, 0.5).col(0);
  Eigen::VectorXd cv = random_matrix(rng, 405, n_v, 1, 0.5).col(0);

  const Eigen::Index n_ut = m.n_utilde();
  Eigen::MatrixXd g_c = Eigen::MatrixXd::Zero(n_ut, gu.cols() + gw.cols() + gv.cols());
  g_c.block(0, 0, n_u, gu.cols()) = gu;
  g_c.block(n_u, gu.cols(), n_w, gw.cols()) = gw;
  g_c.block(n_u + n_w, gu.cols() + gw.cols(), n_v, gv.cols()) = gv;
  inst.decomposition.u_c = Zonotope{Eigen::VectorXd::Zero(n_ut), std::move(g_c)};

  auto stack_centers = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c) {
    Eigen::VectorXd out(n_ut);
    out << a, b, c;
    return out;
  };

  if (!vary_signal) {
    inst.u = SetChannel::constant(Zonotope{cu, gu});
    inst.w = SetChannel::constant(Zonotope{cw, gw});
    inst.v = SetChannel::constant(Zonotope{cv, gv});
    inst.decomposition.u_v_constant = true;
    inst.decomposition.u_v.push_back(stack_centers(cu, cw, cv));
  } else {
    std::vector<Zonotope> us, ws, vs;
    inst.decomposition.u_v_constant = false;
    for (int k = 0; k <= signal_steps; ++k) {
      auto shift = [&](Eigen::Index dim, std::uint64_t tag) {
        Eigen::VectorXd d(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
          d[j] = 0.5 * rng.uniform_pm1(tag, static_cast<std::uint64_t>(k),
                                       static_cast<std::uint64_t>(j));
        }
        return d;
      };
      Eigen::VectorXd du = cu + shift(n_u, 500);
      Eigen::VectorXd dw = cw + shift(n_w, 501);
      Eigen::VectorXd dv = cv + shift(n_v, 502);
      us.push_back(Zonotope{du, gu});
      ws.push_back(Zonotope{dw, gw});
      vs.push_back(Zonotope{dv, gv});
      inst.decomposition.u_v.push_back(stack_centers(du, dw, dv));
    }
    inst.u = SetChannel::per_step(std::move(us));
    inst.w = SetChannel::per_step(std::move(ws));
    inst.v = SetChannel::per_step(std::move(vs));
  }
  return inst;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log_log_slope: need at least two matching points");
  }
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    num += dx * (std::log(y[i]) - my);
    den += dx * dx;
  }
  return num / den;
}

namespace {

double time_one_run(Method method, const RandomInstance& inst, int k_h) {
  UncertaintySpec spec(inst.u, inst.w, inst.v, std::make_shared<LabelRegistry>());
  spec.set_decomposition(inst.decomposition);
  const InitialOutputs y0 = InitialOutputs::from_vectors(inst.y_init);
  const ReachOptions opts{/*collect_sets=*/false};
  const int p = inst.model.p;

  // The labeled per-step input sets are the algorithm's inputs; materialize
  // them outside the timed region.
  for (int k = 0; k <= p + k_h + p - 1; ++k) spec.combined(k);

  const auto t0 = Clock::now();
  switch (method) {
    case Method::kArmax:
      reach_dependent(inst.model, y0, spec, k_h, opts);
      break;
    case Method::kArmaxDp:
      reach_dependent_dp(inst.model, y0, spec, k_h, opts);
      break;
    case Method::kArmaxOneshot:
      for (int kb = p; kb <= p + k_h; kb += p) reach_oneshot(inst.model, y0, spec, kb);
      break;
    case Method::kArmaxAlg1:
      reach_alg1(inst.model, y0, spec, p, k_h, opts);
      break;
    case Method::kArmaxAlg2:
      reach_alg2(inst.model, y0, spec, p, k_h, opts);
      break;
    case Method::kSS:
      throw std::invalid_argument("bench: SS is not a benchmark method");
  }
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Cell {
  int f_k, f_n, p;
};

}  // namespace

std::vector<BenchRecord> run_bench(const BenchGridConfig& grid, int reps) {
  if (reps < 3) throw ConfigError("bench: the median needs reps >= 3");
  if (grid.f_k.empty() || grid.f_n.empty() || grid.p.empty() || grid.methods.empty()) {
    throw ConfigError("bench: empty grid");
  }

#ifdef __GLIBC__
  // Keep large blocks on the heap between repetitions; re-mmapped pages would
  // otherwise be refaulted in every run and dominate the small cells.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif

  std::vector<Cell> cells;
  for (int fk : grid.f_k) {
    for (int fn : grid.f_n) {
      for (int p : grid.p) cells.push_back({fk, fn, p});
    }
  }

  std::vector<BenchRecord> records(cells.size() * grid.methods.size());
  auto work = [&](std::size_t cell_idx) {
    const Cell& cell = cells[cell_idx];
    // Instance depends on the cell shape only, not on f_k, so sweeping the
    // horizon times the same system.
    const std::uint64_t cell_seed =
        CounterRng::mix(grid.seed ^ CounterRng::mix(static_cast<std::uint64_t>(cell.f_n) << 32 |
                                                    static_cast<std::uint64_t>(cell.p)));
    const RandomInstance inst = random_instance(cell_seed, cell.f_n, cell.p, grid.set_order);
    const int k_h = cell.f_k * cell.p;
    for (std::size_t mi = 0; mi < grid.methods.size(); ++mi) {
      const Method method = grid.methods[mi];
      time_one_run(method, inst, k_h);  // warm-up, excluded
      std::vector<double> times;
      times.reserve(static_cast<std::size_t>(reps));
      for (int r = 0; r < reps; ++r) times.push_back(time_one_run(method, inst, k_h));
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      const double median = times.size() % 2 == 1
                                ? times[mid]
                                : 0.5 * (times[mid - 1] + times[mid]);
      BenchRecord rec;
      rec.method = method;
      rec.f_k = cell.f_k;
      rec.f_n = cell.f_n;
      rec.p = cell.p;
      rec.median_s = median;
      records[cell_idx * grid.methods.size() + mi] = std::move(rec);
    }
  };

  const int threads = env_thread_count();
  if (threads <= 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
          work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Slope per method along every swept axis, other axes at their first value.
  struct Axis {
    const char* name;
    std::vector<int> BenchGridConfig::* values;
    int Cell::* member;
  };
  const Axis axes[] = {{"f_k", &BenchGridConfig::f_k, &Cell::f_k},
                       {"f_n", &BenchGridConfig::f_n, &Cell::f_n},
                       {"p", &BenchGridConfig::p, &Cell::p}};
  for (const Axis& axis : axes) {
    const std::vector<int>& vals = grid.*(axis.values);
    if (vals.size() < 2) continue;
    for (Method method : grid.methods) {
      std::vector<double> xs, ys;
      std::vector<BenchRecord*> fit_records;
      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Cell& cell = cells[ci];
        bool on_base_line = true;
        for (const Axis& other : axes) {
          if (&other == &axis) continue;
          if (cell.*(other.member) != (grid.*(other.values)).front()) on_base_line = false;
        }
        if (!on_base_line) continue;
        for (std::size_t mi = 0; mi < grid.methods.size(); ++mi) {
          if (grid.methods[mi] != method) continue;
          BenchRecord& rec = records[ci * grid.methods.size() + mi];
          xs.push_back(static_cast<double>(cell.*(axis.member)));
          ys.push_back(std::max(rec.median_s, 1e-12));
          fit_records.push_back(&rec);
        }
      }
      if (xs.size() < 2) continue;
      const double slope = log_log_slope(xs, ys);
      for (BenchRecord* rec : fit_records) {
        rec->slope_axis = axis.name;
        rec->slope = slope;
      }
    }
  }
  return records;
}

}  // namespace armax_reach
