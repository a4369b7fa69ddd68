#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "armax_reach/symbolic_zonotope.hpp"

namespace armax_reach {

// Projected generators are flipped into the upper half plane and sorted by
// angle; walking them in order traces the right boundary from the lowest
// vertex to the highest, and the left boundary is its point reflection.
std::vector<Eigen::Vector2d> project_polygon(const SymbolicZonotope& z,
                                             Eigen::Index dim_x, Eigen::Index dim_y) {
  if (dim_x < 0 || dim_x >= z.dim() || dim_y < 0 || dim_y >= z.dim() || dim_x == dim_y) {
    throw std::invalid_argument("project_polygon: projection dimensions must be valid and distinct");
  }
  const Eigen::Vector2d c(z.center()[dim_x], z.center()[dim_y]);

  std::vector<Eigen::Vector2d> gens;
  gens.reserve(z.num_generators());
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    Eigen::Vector2d g(z.generators()(dim_x, j), z.generators()(dim_y, j));
    if (g.cwiseAbs().maxCoeff() <= 1e-14) continue;
    if (g.y() < 0.0 || (g.y() == 0.0 && g.x() < 0.0)) g = -g;
    gens.push_back(g);
  }
  if (gens.empty()) return {c};

  std::sort(gens.begin(), gens.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
  });

  // Parallel generators span the same edge direction; merge them.
  std::vector<Eigen::Vector2d> merged;
  merged.push_back(gens.front());
  for (std::size_t i = 1; i < gens.size(); ++i) {
    const Eigen::Vector2d& prev = merged.back();
    const double cross = prev.x() * gens[i].y() - prev.y() * gens[i].x();
    const double scale = prev.norm() * gens[i].norm();
    if (std::abs(cross) <= 1e-13 * std::max(1.0, scale)) {
      merged.back() += gens[i];
    } else {
      merged.push_back(gens[i]);
    }
  }

  Eigen::Vector2d total = Eigen::Vector2d::Zero();
  for (const auto& g : merged) total += g;

  if (merged.size() == 1) {
    return {c - merged[0], c + merged[0]};
  }

  std::vector<Eigen::Vector2d> vertices;
  vertices.reserve(2 * merged.size());
  Eigen::Vector2d v = c - total;  // lowest vertex: every flipped generator at -1
  vertices.push_back(v);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    v += 2.0 * merged[i];
    vertices.push_back(v);
  }
  v += 2.0 * merged.back();
  vertices.push_back(v);  // = c + total, the highest vertex
  for (std::size_t i = 1; i + 1 < merged.size() + 1; ++i) {
    vertices.push_back(2.0 * c - vertices[i]);
  }
  return vertices;
}

}  // namespace armax_reach
