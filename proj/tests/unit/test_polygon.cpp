#include <doctest.h>

#include <random>

#include "armax_reach/symbolic_zonotope.hpp"
#include "test_support.hpp"

using namespace armax_reach;
using test_support::mat;
using test_support::sz;
using test_support::vec;

namespace {

bool vertex_in(const std::vector<Eigen::Vector2d>& vs, const Eigen::Vector2d& p, double tol) {
  for (const auto& v : vs) {
    if ((v - p).cwiseAbs().maxCoeff() <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("unit square projects to its four corners counterclockwise") {
  auto z = sz(vec({0, 0}), mat({{1, 0}, {0, 1}}), {1, 2});
  auto poly = project_polygon(z, 0, 1);
  REQUIRE(poly.size() == 4);
  CHECK(test_support::polygon_area(poly) == doctest::Approx(4.0));
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      CHECK(vertex_in(poly, Eigen::Vector2d(sx, sy), 1e-12));
    }
  }
}

TEST_CASE("a single generator projects to a segment") {
  auto z = sz(vec({0, 0}), mat({{1}, {1}}), {1});
  auto poly = project_polygon(z, 0, 1);
  REQUIRE(poly.size() == 2);
  CHECK(vertex_in(poly, Eigen::Vector2d(-1, -1), 1e-12));
  CHECK(vertex_in(poly, Eigen::Vector2d(1, 1), 1e-12));
}

TEST_CASE("all-zero generators project to the center point") {
  auto z = sz(vec({2, 3}), Eigen::MatrixXd::Zero(2, 2), {1, 2});
  auto poly = project_polygon(z, 0, 1);
  REQUIRE(poly.size() == 1);
  CHECK(vertex_in(poly, Eigen::Vector2d(2, 3), 1e-12));
}

TEST_CASE("three generators give a hexagon matching the brute-force hull") {
  auto z = sz(vec({0, 0}), mat({{1, 0, 1}, {0, 1, 1}}), {1, 2, 3});
  auto poly = project_polygon(z, 0, 1);
  REQUIRE(poly.size() == 6);
  auto hull = test_support::convex_hull(test_support::corner_points({0, 0}, z.generators()));
  REQUIRE(hull.size() == poly.size());
  CHECK(test_support::polygon_area(poly) ==
        doctest::Approx(test_support::polygon_area(hull)).epsilon(1e-12));
  for (const auto& v : hull) CHECK(vertex_in(poly, v, 1e-9));
}

TEST_CASE("random polygons match the hull of all factor sign patterns") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  LabelRegistry reg;
  for (int trial = 0; trial < 25; ++trial) {
    const int q = 1 + trial % 10;
    Eigen::VectorXd c(3);
    Eigen::MatrixXd g(3, q);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = dist(rng);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = dist(rng);
    SymbolicZonotope z(c, g, reg.fresh_block(q));

    auto poly = project_polygon(z, 0, 2);
    Eigen::MatrixXd g2(2, q);
    g2.row(0) = g.row(0);
    g2.row(1) = g.row(2);
    auto hull = test_support::convex_hull(
        test_support::corner_points({c[0], c[2]}, g2));

    CHECK(test_support::polygon_area(poly) ==
          doctest::Approx(test_support::polygon_area(hull)).epsilon(1e-9));
    for (const auto& v : hull) CHECK(vertex_in(poly, v, 1e-9));

    // Every polygon vertex must belong to the projected set.
    SymbolicZonotope projected(Eigen::Vector2d(c[0], c[2]), g2, z.labels());
    for (const auto& v : poly) {
      CHECK(contains_point(projected, v, 1e-9));
    }
  }
}

TEST_CASE("projection dimensions must be valid and distinct") {
  auto z = sz(vec({0, 0}), mat({{1, 0}, {0, 1}}), {1, 2});
  CHECK_THROWS_AS(project_polygon(z, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(project_polygon(z, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(project_polygon(z, -1, 1), std::invalid_argument);
}
