#include <doctest.h>

#include "armax_reach/conversion.hpp"
#include "armax_reach/models.hpp"
#include "test_support.hpp"

using namespace armax_reach;
using test_support::mat;
using test_support::pedestrian_ss;
using test_support::vec;

namespace {

std::vector<Eigen::VectorXd> repeat(const Eigen::VectorXd& v, int count) {
  return std::vector<Eigen::VectorXd>(static_cast<std::size_t>(count), v);
}

}  // namespace

TEST_CASE("simulate_ss with zero inputs from the origin stays at zero") {
  const StateSpaceModel ss = pedestrian_ss();
  auto y = simulate_ss(ss, Eigen::VectorXd::Zero(4), repeat(Eigen::VectorXd::Zero(2), 6),
                       repeat(Eigen::VectorXd::Zero(4), 6), repeat(Eigen::VectorXd::Zero(2), 6), 5);
  REQUIRE(y.size() == 6);
  for (const auto& yk : y) CHECK(yk.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("simulate_ss at horizon zero applies the output equation once") {
  const StateSpaceModel ss = pedestrian_ss();
  const Eigen::VectorXd x0 = vec({1, 2, 3, 4});
  auto y = simulate_ss(ss, x0, repeat(vec({0.5, -0.5}), 1), repeat(Eigen::VectorXd::Zero(4), 1),
                       repeat(vec({0.1, 0.2}), 1), 0);
  REQUIRE(y.size() == 1);
  CHECK(test_support::max_abs_diff(y[0], Eigen::VectorXd(ss.C * x0 + vec({0.1, 0.2}))) == 0.0);
}

TEST_CASE("pedestrian two-step response matches the hand recursion") {
  const StateSpaceModel ss = pedestrian_ss();
  auto y = simulate_ss(ss, Eigen::VectorXd::Zero(4), repeat(vec({1, 0}), 3),
                       repeat(Eigen::VectorXd::Zero(4), 3), repeat(Eigen::VectorXd::Zero(2), 3), 2);
  // x(1) = B u, x(2) = A x(1) + B u evaluated by hand
  CHECK(test_support::max_abs_diff(y[1], vec({5e-5, 0})) <= 1e-18);
  CHECK(test_support::max_abs_diff(y[2], vec({2e-4, 0})) <= 1e-18);
}

TEST_CASE("simulate_armax with zero parameters gives zero beyond the initial outputs") {
  ArmaxModel m;
  m.p = 2;
  m.n_y = 1;
  m.n_u = 1;
  m.n_w = 0;
  m.n_v = 0;
  m.a_bar = {mat({{0}}), mat({{0}})};
  m.b_bar = {mat({{0}}), mat({{0}}), mat({{0}})};
  auto y_init = InitialOutputs::from_vectors({vec({3}), vec({-2})});
  auto y = simulate_armax(m, y_init, repeat(vec({1}), 8), 7);
  CHECK(y[0][0] == 3.0);
  CHECK(y[1][0] == -2.0);
  for (std::size_t k = 2; k < y.size(); ++k) CHECK(y[k][0] == 0.0);
}

TEST_CASE("scalar first-order model decays geometrically") {
  ArmaxModel m;
  m.p = 1;
  m.n_y = 1;
  m.n_u = 1;
  m.n_w = 0;
  m.n_v = 0;
  m.a_bar = {mat({{0.5}})};
  m.b_bar = {mat({{0}}), mat({{1}})};
  auto y = simulate_armax(m, InitialOutputs::from_vectors({vec({1})}),
                          repeat(Eigen::VectorXd::Zero(1), 11), 10);
  for (int k = 0; k <= 10; ++k) {
    CHECK(y[static_cast<std::size_t>(k)][0] == doctest::Approx(std::pow(0.5, k)));
  }
}

TEST_CASE("converted pedestrian model reproduces the SS trajectory") {
  const StateSpaceModel ss = pedestrian_ss();
  const ArmaxModel m = ss_to_armax(ss, test_support::pedestrian_gain(), 2);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  std::vector<Eigen::VectorXd> u, w, v, ut;
  for (int k = 0; k <= 40; ++k) {
    Eigen::VectorXd uk(2), wk(4), vk(2), utk(8);
    for (auto* x : {&uk, &vk}) {
      for (Eigen::Index i = 0; i < x->size(); ++i) (*x)[i] = dist(rng);
    }
    for (Eigen::Index i = 0; i < 4; ++i) wk[i] = dist(rng);
    utk << uk, wk, vk;
    u.push_back(uk);
    w.push_back(wk);
    v.push_back(vk);
    ut.push_back(utk);
  }
  const Eigen::VectorXd x0 = vec({0.3, -0.2, 0.5, 0.1});
  auto ys = simulate_ss(ss, x0, u, w, v, 40);
  auto ya = simulate_armax(m, InitialOutputs::from_vectors({ys[0], ys[1]}), ut, 40);
  for (int k = 2; k <= 40; ++k) {
    CHECK(test_support::max_abs_diff(ys[static_cast<std::size_t>(k)],
                                     ya[static_cast<std::size_t>(k)]) <= 1e-8);
  }
}

TEST_CASE("model validation catches inconsistent shapes") {
  StateSpaceModel ss = pedestrian_ss();
  ss.C = mat({{1, 0, 0}});
  CHECK_THROWS_AS(ss.validate(), std::invalid_argument);

  ArmaxModel m;
  m.p = 2;
  m.n_y = 1;
  m.n_u = 1;
  m.n_w = 0;
  m.n_v = 0;
  m.a_bar = {mat({{1}})};  // needs exactly p entries
  m.b_bar = {mat({{0}}), mat({{0}}), mat({{0}})};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("simulate argument validation") {
  const StateSpaceModel ss = pedestrian_ss();
  CHECK_THROWS_AS(simulate_ss(ss, Eigen::VectorXd::Zero(3), {}, {}, {}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_ss(ss, Eigen::VectorXd::Zero(4), repeat(vec({1, 0}), 1),
                              repeat(Eigen::VectorXd::Zero(4), 1),
                              repeat(Eigen::VectorXd::Zero(2), 1), 1),
                  std::invalid_argument);

  ArmaxModel m = ss_to_armax(ss, test_support::pedestrian_gain(), 2);
  CHECK_THROWS_AS(
      simulate_armax(m, InitialOutputs::from_vectors({vec({0, 0})}), {}, 3),
      std::invalid_argument);  // only one initial output for p = 2
}

TEST_CASE("initial outputs stack in order") {
  auto y = InitialOutputs::from_vectors({vec({1, 2}), vec({3, 4})});
  CHECK(y.p == 2);
  CHECK(y.n_y == 2);
  CHECK(test_support::max_abs_diff(y.stacked, vec({1, 2, 3, 4})) == 0.0);
  CHECK(test_support::max_abs_diff(y.y(1), vec({3, 4})) == 0.0);
}
