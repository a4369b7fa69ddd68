#include <doctest.h>

#include <random>

#include "armax_reach/symbolic_zonotope.hpp"
#include "test_support.hpp"

using namespace armax_reach;
using test_support::mat;
using test_support::sz;
using test_support::vec;

TEST_CASE("the center is contained in any set") {
  CHECK(contains_point(SymbolicZonotope::point(vec({1, 2})), vec({1, 2}), 0.0));
  auto z = sz(vec({3, -1}), mat({{1, 0.5}, {0, 2}}), {1, 2});
  CHECK(contains_point(z, z.center(), 0.0));
}

TEST_CASE("a point outside the factor box is rejected at zero tolerance") {
  auto z = sz(vec({0}), mat({{1}}), {1});
  CHECK_FALSE(contains_point(z, vec({1.5}), 0.0));
  CHECK(contains_point(z, vec({1.0}), 0.0));
  CHECK(contains_point(z, vec({-1.0}), 0.0));
}

TEST_CASE("containment requires solving for the factors jointly") {
  auto z = sz(vec({0, 0}), mat({{1, 1}, {0, 1}}), {1, 2});
  CHECK(contains_point(z, vec({2, 1}), 1e-9));   // lambda = (1, 1)
  CHECK_FALSE(contains_point(z, vec({2, 2}), 1e-9));
  CHECK_FALSE(contains_point(z, vec({-2, 1}), 1e-9));
}

TEST_CASE("point sets reduce to a tolerance comparison") {
  auto z = SymbolicZonotope::point(vec({1, 2}));
  CHECK(contains_point(z, vec({1, 2 + 1e-10}), 1e-9));
  CHECK_FALSE(contains_point(z, vec({1, 2.01}), 1e-9));
}

TEST_CASE("sampled factor points are always contained") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  LabelRegistry reg;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const int q = 1 + trial;
    Eigen::VectorXd c(n);
    Eigen::MatrixXd g(n, q);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = 2 * dist(rng);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = dist(rng);
    SymbolicZonotope z(c, g, reg.fresh_block(q));
    for (int s = 0; s < 50; ++s) {
      Eigen::VectorXd lambda(q);
      for (int j = 0; j < q; ++j) lambda[j] = dist(rng);
      CHECK(contains_point(z, z.point_from_factors(lambda), 1e-9));
    }
  }
}

TEST_CASE("support points lie inside, points past them outside") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  LabelRegistry reg;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2, q = 5;
    Eigen::VectorXd c(n);
    Eigen::MatrixXd g(n, q);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = dist(rng);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = dist(rng);
    SymbolicZonotope z(c, g, reg.fresh_block(q));

    Eigen::Vector2d d(dist(rng), dist(rng));
    if (d.norm() < 0.1) d << 1, 0;
    d.normalize();
    // Support point in direction d: every factor at the sign of d.g_i.
    Eigen::VectorXd lambda(q);
    for (int j = 0; j < q; ++j) lambda[j] = d.dot(g.col(j)) >= 0 ? 1.0 : -1.0;
    const Eigen::VectorXd on_boundary = z.point_from_factors(lambda);
    CHECK(contains_point(z, on_boundary, 1e-9));
    CHECK_FALSE(contains_point(z, Eigen::VectorXd(on_boundary + 1e-3 * d), 1e-9));
  }
}

TEST_CASE("zero generator columns do not affect containment") {
  auto z = sz(vec({0}), mat({{1, 0}}), {1, 2});
  CHECK(contains_point(z, vec({0.5}), 0.0));
  CHECK_FALSE(contains_point(z, vec({1.2}), 0.0));
}

TEST_CASE("containment argument validation") {
  auto z = sz(vec({0}), mat({{1}}), {1});
  CHECK_THROWS_AS(contains_point(z, vec({0, 0}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(contains_point(z, vec({0}), -1.0), std::invalid_argument);
}
