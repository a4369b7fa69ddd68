#include "armax_reach/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "armax_reach/stacked_params.hpp"

namespace armax_reach {

std::uint64_t CounterRng::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double CounterRng::uniform_pm1(std::uint64_t stream, std::uint64_t substream,
                               std::uint64_t index) const {
  std::uint64_t h = mix(seed);
  h = mix(h ^ stream);
  h = mix(h ^ substream);
  h = mix(h ^ index);
  // 53 mantissa bits -> [0, 1), then stretch to [-1, 1).
  const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

Eigen::VectorXd sample_point(const SymbolicZonotope& z, const CounterRng& rng,
                             std::uint64_t stream, std::uint64_t substream) {
  Eigen::VectorXd lambda(z.num_generators());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    lambda[j] = rng.uniform_pm1(stream, substream, static_cast<std::uint64_t>(j));
  }
  return z.point_from_factors(lambda);
}

std::vector<SampleRun> run_samples(const ArmaxModel& m, const InitialOutputs& y_init,
                                   UncertaintySpec& spec, int k_h, int n_samples,
                                   std::uint64_t seed) {
  m.validate();
  if (y_init.p != m.p || y_init.n_y != m.n_y) {
    throw std::invalid_argument("run_samples: y_init must hold exactly p measurements");
  }
  if (spec.n_u() != m.n_u || spec.n_w() != m.n_w || spec.n_v() != m.n_v) {
    throw std::invalid_argument("run_samples: channel dimensions must match the model");
  }
  if (k_h < 0) throw std::invalid_argument("run_samples: k_h must be >= 0");
  if (n_samples < 0) throw std::invalid_argument("run_samples: n_samples must be >= 0");

  const int p = m.p;
  const int horizon = p + k_h;
  // Stacked evaluations cover whole blocks of p steps; extend the sampled
  // range so the last block is complete.
  std::vector<int> block_starts;
  for (int kb = p; kb <= horizon; kb += p) block_starts.push_back(kb);
  const int full = block_starts.empty() ? horizon : block_starts.back() + p - 1;

  // Time-varying parameters per block start, shared by every sample.
  const StackedParams base = build_extended(m);
  std::vector<StackedParams> block_params;
  block_params.reserve(block_starts.size());
  for (int kb : block_starts) block_params.push_back(params_direct(base, kb));

  const CounterRng rng{seed};
  using Channel = UncertaintySpec::Channel;
  std::vector<SampleRun> runs;
  runs.reserve(static_cast<std::size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    SampleRun run;
    run.sample_index = static_cast<std::uint64_t>(s);
    std::vector<Eigen::VectorXd> utilde;
    utilde.reserve(static_cast<std::size_t>(full) + 1);
    for (int k = 0; k <= full; ++k) {
      const std::uint64_t stream = static_cast<std::uint64_t>(s);
      const std::uint64_t base_sub = 4ULL * static_cast<std::uint64_t>(k);
      run.u.push_back(sample_point(spec.channel_set(Channel::kU, k), rng, stream, base_sub));
      run.w.push_back(sample_point(spec.channel_set(Channel::kW, k), rng, stream, base_sub + 1));
      run.v.push_back(sample_point(spec.channel_set(Channel::kV, k), rng, stream, base_sub + 2));
      Eigen::VectorXd ut(m.n_utilde());
      ut << run.u.back(), run.w.back(), run.v.back();
      utilde.push_back(std::move(ut));
    }
    run.y = simulate_armax(m, y_init, utilde, full);

    double err = 0.0;
    for (std::size_t b = 0; b < block_starts.size(); ++b) {
      const StackedParams& tv = block_params[b];
      const int kb = block_starts[b];
      const int kb_plus = kb + p - 1;
      Eigen::VectorXd stacked = tv.a_tilde * y_init.stacked;
      for (int i = 0; i <= kb_plus; ++i) {
        stacked += tv.b_tilde.at(i) * utilde[static_cast<std::size_t>(kb_plus - i)];
      }
      for (int j = 0; j < p; ++j) {
        const Eigen::VectorXd block = stacked_block(stacked, j, m.n_y);
        err = std::max(err,
                       (block - run.y[static_cast<std::size_t>(kb + j)]).cwiseAbs().maxCoeff());
      }
    }
    run.reformulation_error = err;
    runs.push_back(std::move(run));
  }
  return runs;
}

double ContainmentReport::min_fraction() const {
  double out = 1.0;
  for (double f : fraction) out = std::min(out, f);
  return fraction.empty() ? 1.0 : out;
}

ContainmentReport containment_report(const std::vector<SampleRun>& runs,
                                     const ReachResult& result, double tol) {
  ContainmentReport report;
  report.first_k = result.first_k;
  report.total = static_cast<int>(runs.size());
  if (runs.empty()) return report;
  if (!result.has_sets()) {
    throw std::invalid_argument("containment_report: result carries no materialized sets");
  }
  for (const auto& run : runs) {
    if (static_cast<int>(run.y.size()) <= result.last_k()) {
      throw std::invalid_argument("containment_report: trajectories shorter than result range");
    }
  }
  for (int k = result.first_k; k <= result.last_k(); ++k) {
    int contained = 0;
    for (const auto& run : runs) {
      if (contains_point(result.set_at(k), run.y[static_cast<std::size_t>(k)], tol)) {
        ++contained;
      }
    }
    report.fraction.push_back(static_cast<double>(contained) / static_cast<double>(runs.size()));
  }
  return report;
}

}  // namespace armax_reach
