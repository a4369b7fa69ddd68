#include "armax_reach/experiment.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>

#include "armax_reach/conversion.hpp"

namespace armax_reach {

namespace {

using Clock = std::chrono::steady_clock;

UncertaintySpec make_spec(const ExperimentConfig& cfg) {
  UncertaintySpec spec(cfg.u, cfg.w, cfg.v, std::make_shared<LabelRegistry>());
  if (cfg.decomposition) spec.set_decomposition(*cfg.decomposition);
  return spec;
}

/// Step-by-step SS baseline assembled into the common result shape.
ReachResult run_ss_method(const ExperimentConfig& cfg, UncertaintySpec& spec,
                          const InitialOutputs& y_init) {
  const int p = cfg.order();
  SymbolicZonotope x0 = estimate_initial_state_set(cfg.model.ss, y_init, spec, p);
  ReachResult res;
  res.method = method_tag(Method::kSS);
  res.first_k = p;
  for (int k = p; k <= p + cfg.k_h; ++k) {
    const auto t0 = Clock::now();
    SymbolicZonotope y = reach_ss(cfg.model.ss, x0, spec, k);
    res.iteration_seconds.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    res.hulls.push_back(interval_hull(y));
    res.sets.push_back(std::move(y));
  }
  return res;
}

/// One-shot evaluations at consecutive block starts, truncated to the range.
ReachResult run_oneshot_method(const ArmaxModel& m, const InitialOutputs& y_init,
                               UncertaintySpec& spec, int k_init, int k_h) {
  const int p = m.p;
  const int last = p + k_h;
  ReachResult res;
  res.method = method_tag(Method::kArmaxOneshot);
  res.first_k = k_init;
  for (int kb = k_init; kb <= last; kb += p) {
    const auto t0 = Clock::now();
    SymbolicZonotope stacked = reach_oneshot(m, y_init, spec, kb);
    std::vector<SymbolicZonotope> blocks = unstack(stacked, p);
    res.iteration_seconds.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    for (int j = 0; j < p && kb + j <= last; ++j) {
      res.hulls.push_back(interval_hull(blocks[static_cast<std::size_t>(j)]));
      res.sets.push_back(std::move(blocks[static_cast<std::size_t>(j)]));
    }
  }
  return res;
}

}  // namespace

ArmaxModel resolve_model(const ExperimentConfig& cfg, std::optional<Eigen::MatrixXd>* m_gain,
                         double* residual) {
  if (cfg.model.type == ModelConfig::Type::kArmax) {
    if (m_gain) m_gain->reset();
    if (residual) *residual = 0.0;
    return cfg.model.armax;
  }
  const StateSpaceModel& ss = cfg.model.ss;
  Eigen::MatrixXd gain =
      cfg.model.m_gain ? *cfg.model.m_gain : deadbeat_gain(ss, cfg.model.p);
  ArmaxModel m = ss_to_armax(ss, gain, cfg.model.p);
  if (m_gain) *m_gain = gain;
  if (residual) *residual = deadbeat_residual(ss, gain, cfg.model.p);
  return m;
}

ExperimentOutputs run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutputs out;
  out.armax = resolve_model(cfg, &out.m_gain, &out.nilpotency_residual);

  UncertaintySpec spec = make_spec(cfg);
  const InitialOutputs y_init = InitialOutputs::from_vectors(cfg.y_init);
  const int k_init = cfg.resolved_k_init();

  for (Method method : cfg.methods) {
    MethodRun run;
    run.method = method;
    switch (method) {
      case Method::kSS:
        run.result = run_ss_method(cfg, spec, y_init);
        break;
      case Method::kArmax:
        run.result = reach_dependent(out.armax, y_init, spec, cfg.k_h);
        break;
      case Method::kArmaxDp:
        run.result = reach_dependent_dp(out.armax, y_init, spec, cfg.k_h);
        break;
      case Method::kArmaxOneshot:
        run.result = run_oneshot_method(out.armax, y_init, spec, k_init, cfg.k_h);
        break;
      case Method::kArmaxAlg1:
        run.result = reach_alg1(out.armax, y_init, spec, k_init, cfg.k_h);
        break;
      case Method::kArmaxAlg2:
        run.result = reach_alg2(out.armax, y_init, spec, k_init, cfg.k_h);
        break;
    }
    out.runs.push_back(std::move(run));
  }

  if (cfg.n_samples > 0) {
    out.samples = run_samples(out.armax, y_init, spec, cfg.k_h, cfg.n_samples, cfg.seed);
    for (auto& run : out.runs) {
      run.containment = containment_report(out.samples, run.result, 1e-7);
    }
  }
  return out;
}

}  // namespace armax_reach
