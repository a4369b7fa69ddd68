#include <doctest.h>

#include <memory>

#include "armax_reach/conversion.hpp"
#include "armax_reach/reach.hpp"
#include "armax_reach/sampling.hpp"
#include "test_support.hpp"

using namespace armax_reach;
using test_support::mat;
using test_support::vec;

namespace {

UncertaintySpec small_spec() {
  return UncertaintySpec(SetChannel::constant_point(vec({0.5})),
                         SetChannel::constant(Zonotope{vec({0}), mat({{0.05}})}),
                         SetChannel::constant(Zonotope{vec({0}), mat({{0.1}})}),
                         std::make_shared<LabelRegistry>());
}

ArmaxModel scalar_model() {
  ArmaxModel m;
  m.p = 1;
  m.n_y = 1;
  m.n_u = 1;
  m.n_w = 1;
  m.n_v = 1;
  m.a_bar = {mat({{0.6}})};
  m.b_bar = {mat({{0.2, 0.0, 1.0}}), mat({{1.0, 1.0, 0.0}})};
  return m;
}

}  // namespace

TEST_CASE("sampling a point set returns its center") {
  const CounterRng rng{42};
  auto z = SymbolicZonotope::point(vec({3, -1}));
  CHECK(test_support::max_abs_diff(sample_point(z, rng, 0, 0), z.center()) == 0.0);
}

TEST_CASE("zero factors give the center") {
  auto z = test_support::sz(vec({2}), mat({{1, -1}}), {1, 2});
  CHECK(z.point_from_factors(Eigen::VectorXd::Zero(2))[0] == 2.0);
}

TEST_CASE("factor sampling covers the interval") {
  const CounterRng rng{7};
  auto z = test_support::sz(vec({0}), mat({{1}}), {1});
  double lo = 1, hi = -1;
  for (int s = 0; s < 1000; ++s) {
    const double v = sample_point(z, rng, static_cast<std::uint64_t>(s), 0)[0];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
  CHECK(lo <= -0.9);
  CHECK(hi >= 0.9);
}

TEST_CASE("runs are deterministic in the seed") {
  const ArmaxModel m = scalar_model();
  const InitialOutputs y0 = InitialOutputs::from_vectors({vec({0.1})});
  UncertaintySpec spec_a = small_spec();
  UncertaintySpec spec_b = small_spec();
  const auto runs_a = run_samples(m, y0, spec_a, 6, 5, 99);
  const auto runs_b = run_samples(m, y0, spec_b, 6, 5, 99);
  REQUIRE(runs_a.size() == runs_b.size());
  for (std::size_t i = 0; i < runs_a.size(); ++i) {
    REQUIRE(runs_a[i].y.size() == runs_b[i].y.size());
    for (std::size_t k = 0; k < runs_a[i].y.size(); ++k) {
      CHECK(test_support::max_abs_diff(runs_a[i].y[k], runs_b[i].y[k]) == 0.0);
    }
  }
  UncertaintySpec spec_c = small_spec();
  const auto runs_c = run_samples(m, y0, spec_c, 6, 5, 100);
  bool any_diff = false;
  for (std::size_t i = 0; i < runs_a.size() && !any_diff; ++i) {
    for (std::size_t k = 0; k < runs_a[i].y.size() && !any_diff; ++k) {
      any_diff = test_support::max_abs_diff(runs_a[i].y[k], runs_c[i].y[k]) > 0.0;
    }
  }
  CHECK(any_diff);
}

TEST_CASE("no samples gives an empty list, zero-width sets identical trajectories") {
  const ArmaxModel m = scalar_model();
  const InitialOutputs y0 = InitialOutputs::from_vectors({vec({0.1})});
  UncertaintySpec spec = small_spec();
  CHECK(run_samples(m, y0, spec, 4, 0, 1).empty());

  UncertaintySpec points(SetChannel::constant_point(vec({0.5})),
                         SetChannel::constant_point(vec({0})),
                         SetChannel::constant_point(vec({0})),
                         std::make_shared<LabelRegistry>());
  const auto runs = run_samples(m, y0, points, 4, 3, 1);
  for (std::size_t k = 0; k < runs[0].y.size(); ++k) {
    CHECK(test_support::max_abs_diff(runs[0].y[k], runs[1].y[k]) == 0.0);
    CHECK(test_support::max_abs_diff(runs[0].y[k], runs[2].y[k]) == 0.0);
  }
}

TEST_CASE("every sampled realization lies in its configured set") {
  const ArmaxModel m = scalar_model();
  const InitialOutputs y0 = InitialOutputs::from_vectors({vec({0.1})});
  UncertaintySpec spec = small_spec();
  const auto runs = run_samples(m, y0, spec, 5, 20, 3);
  for (const auto& run : runs) {
    for (std::size_t k = 0; k < run.w.size(); ++k) {
      CHECK(contains_point(spec.channel_set(UncertaintySpec::Channel::kW, static_cast<int>(k)),
                           run.w[k], 1e-12));
      CHECK(contains_point(spec.channel_set(UncertaintySpec::Channel::kV, static_cast<int>(k)),
                           run.v[k], 1e-12));
    }
  }
}

TEST_CASE("stacked evaluation of sampled trajectories matches the recursion") {
  const ArmaxModel m = scalar_model();
  const InitialOutputs y0 = InitialOutputs::from_vectors({vec({0.1})});
  UncertaintySpec spec = small_spec();
  const auto runs = run_samples(m, y0, spec, 9, 50, 11);
  for (const auto& run : runs) {
    CHECK(run.reformulation_error <= 1e-8);
  }
}

TEST_CASE("containment of samples in exact reachable sets is total") {
  const ArmaxModel m = scalar_model();
  const InitialOutputs y0 = InitialOutputs::from_vectors({vec({0.1})});
  UncertaintySpec spec = small_spec();
  const auto runs = run_samples(m, y0, spec, 7, 50, 5);
  const ReachResult res = reach_dependent(m, y0, spec, 7);
  const ContainmentReport report = containment_report(runs, res, 1e-7);
  CHECK(report.total == 50);
  REQUIRE(report.fraction.size() == res.hulls.size());
  CHECK(report.min_fraction() == 1.0);
}

TEST_CASE("shrunken sets lose samples") {
  const ArmaxModel m = scalar_model();
  const InitialOutputs y0 = InitialOutputs::from_vectors({vec({0.1})});
  UncertaintySpec spec = small_spec();
  const auto runs = run_samples(m, y0, spec, 7, 60, 5);
  ReachResult res = reach_dependent(m, y0, spec, 7);
  for (auto& set : res.sets) {
    set = SymbolicZonotope(set.center(), 0.5 * set.generators(), set.labels());
  }
  const ContainmentReport report = containment_report(runs, res, 1e-7);
  CHECK(report.min_fraction() < 1.0);
}

TEST_CASE("containment report edge cases") {
  const ArmaxModel m = scalar_model();
  const InitialOutputs y0 = InitialOutputs::from_vectors({vec({0.1})});
  UncertaintySpec spec = small_spec();
  const ReachResult res = reach_dependent(m, y0, spec, 7);

  const ContainmentReport empty = containment_report({}, res, 1e-7);
  CHECK(empty.total == 0);
  CHECK(empty.fraction.empty());

  const auto short_runs = run_samples(m, y0, spec, 2, 3, 5);
  CHECK_THROWS_AS(containment_report(short_runs, res, 1e-7), std::invalid_argument);

  UncertaintySpec spec2 = small_spec();
  const ReachResult no_sets = reach_dependent(m, y0, spec2, 7, ReachOptions{false});
  const auto runs = run_samples(m, y0, spec2, 7, 3, 5);
  CHECK_THROWS_AS(containment_report(runs, no_sets, 1e-7), std::invalid_argument);
}
