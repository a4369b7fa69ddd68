#ifndef ARMAX_REACH_TESTS_TEST_SUPPORT_HPP_
#define ARMAX_REACH_TESTS_TEST_SUPPORT_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

#include "armax_reach/models.hpp"
#include "armax_reach/symbolic_zonotope.hpp"

namespace test_support {

using armax_reach::Label;
using armax_reach::SymbolicZonotope;

inline Eigen::VectorXd vec(std::initializer_list<double> vs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(vs.size()));
  Eigen::Index i = 0;
  for (double v : vs) out[i++] = v;
  return out;
}

/// Row-major construction: mat({{1,2},{3,4}}) is [[1,2],[3,4]].
inline Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = static_cast<Eigen::Index>(rows.begin()->size());
  Eigen::MatrixXd out(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

inline SymbolicZonotope sz(Eigen::VectorXd center, Eigen::MatrixXd gens,
                           std::vector<Label> labels) {
  return SymbolicZonotope(std::move(center), std::move(gens), std::move(labels));
}

inline double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// All 2^q corner points c + G * sign-pattern of the projected set.
inline std::vector<Eigen::Vector2d> corner_points(const Eigen::Vector2d& c,
                                                  const Eigen::MatrixXd& g2d) {
  const int q = static_cast<int>(g2d.cols());
  std::vector<Eigen::Vector2d> out;
  out.reserve(std::size_t(1) << q);
  for (unsigned mask = 0; mask < (1u << q); ++mask) {
    Eigen::Vector2d pt = c;
    for (int j = 0; j < q; ++j) {
      pt += ((mask >> j) & 1u ? 1.0 : -1.0) * g2d.col(j);
    }
    out.push_back(pt);
  }
  return out;
}

/// Monotone-chain convex hull, counterclockwise, no repeated first vertex.
inline std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                          return (a - b).cwiseAbs().maxCoeff() < 1e-12;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 1e-12) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

/// Shoelace area of a simple polygon.
inline double polygon_area(const std::vector<Eigen::Vector2d>& poly) {
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    area += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * area;
}

/// Random observable state-space model with bounded spectral radius; retries
/// until the observability index is at most max_p and returns that index.
inline armax_reach::StateSpaceModel random_observable_ss(std::mt19937& rng, int n_x, int n_y,
                                                         int n_u, int* obs_index);

/// Double-integrator pedestrian model with position measurements.
inline armax_reach::StateSpaceModel pedestrian_ss() {
  armax_reach::StateSpaceModel ss;
  ss.A = mat({{1, 0, 0.01, 0}, {0, 1, 0, 0.01}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  ss.B = mat({{5e-5, 0}, {0, 5e-5}, {0.01, 0}, {0, 0.01}});
  ss.C = mat({{1, 0, 0, 0}, {0, 1, 0, 0}});
  ss.D = Eigen::MatrixXd::Zero(2, 2);
  return ss;
}

/// An observer gain making the pedestrian model deadbeat at order 2.
inline Eigen::MatrixXd pedestrian_gain() {
  return mat({{-2, 0}, {0, -2}, {-100, 0}, {0, -100}});
}

}  // namespace test_support

#include "armax_reach/conversion.hpp"

namespace test_support {

inline armax_reach::StateSpaceModel random_observable_ss(std::mt19937& rng, int n_x, int n_y,
                                                         int n_u, int* obs_index) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto rand_mat = [&](int r, int c) {
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) m(i, j) = dist(rng);
    }
    return m;
  };
  for (;;) {
    armax_reach::StateSpaceModel ss;
    ss.A = rand_mat(n_x, n_x);
    const double rho = Eigen::EigenSolver<Eigen::MatrixXd>(ss.A, false)
                           .eigenvalues().cwiseAbs().maxCoeff();
    if (rho > 0.95) ss.A *= 0.95 / rho;
    ss.B = rand_mat(n_x, n_u);
    ss.C = rand_mat(n_y, n_x);
    ss.D = rand_mat(n_y, n_u) * 0.2;
    const int idx = armax_reach::observability_index(ss);
    if (idx < 0) continue;
    if (obs_index) *obs_index = idx;
    return ss;
  }
}

}  // namespace test_support

#endif  // ARMAX_REACH_TESTS_TEST_SUPPORT_HPP_
