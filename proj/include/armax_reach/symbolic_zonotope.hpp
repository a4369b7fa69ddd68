#ifndef ARMAX_REACH_SYMBOLIC_ZONOTOPE_HPP_
#define ARMAX_REACH_SYMBOLIC_ZONOTOPE_HPP_

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "armax_reach/labels.hpp"

namespace armax_reach {

/// Plain zonotope < c, G >: the set { c + G*lambda | lambda in [-1,1]^q }.
/// Carries no factor identity; use to_symbolic() to lift it into a run.
struct Zonotope {
  Eigen::VectorXd center;
  Eigen::MatrixXd generators;  // n x q, q >= 0

  Eigen::Index dim() const { return center.size(); }
  Eigen::Index num_generators() const { return generators.cols(); }

  /// Throws std::invalid_argument on shape mismatch or non-finite entries.
  void validate() const;
};

/// Componentwise axis-aligned bounds of a set.
struct IntervalHull {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::VectorXd width() const { return upper - lower; }
};

/// Zonotope whose generator columns carry pairwise distinct positive integer
/// labels. Columns with equal labels in different sets share the same
/// symbolic factor, so additions can preserve dependencies exactly.
///
/// Value type: all operations return new sets and never mutate operands.
class SymbolicZonotope {
 public:
  /// Empty 0-dimensional set; mostly useful as a placeholder.
  SymbolicZonotope() = default;

  /// Validating constructor. Requires center length == generator rows,
  /// one label per column, pairwise distinct positive labels, finite entries.
  SymbolicZonotope(Eigen::VectorXd center, Eigen::MatrixXd generators,
                   std::vector<Label> labels);

  /// Degenerate point set {c} with no generators.
  static SymbolicZonotope point(Eigen::VectorXd center);

  /// Construction without invariant checks, for internal call sites whose
  /// outputs satisfy the invariants by construction.
  static SymbolicZonotope trusted(Eigen::VectorXd center, Eigen::MatrixXd generators,
                                  std::vector<Label> labels);

  Eigen::Index dim() const { return center_.size(); }
  Eigen::Index num_generators() const { return generators_.cols(); }

  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& generators() const { return generators_; }
  const std::vector<Label>& labels() const { return labels_; }

  LabeledMatrix labeled_generators() const { return {generators_, labels_}; }

  /// c + G*lambda for an explicit factor vector (size q).
  Eigen::VectorXd point_from_factors(const Eigen::VectorXd& lambda) const;

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd generators_;
  std::vector<Label> labels_;
};

/// Lift a plain zonotope by assigning fresh labels to every column.
SymbolicZonotope to_symbolic(const Zonotope& z, LabelRegistry& registry);

/// Exact addition: centers summed, labeled generator matrices added.
/// Matching labels merge, so dependencies between the operands are kept.
SymbolicZonotope exact_add(const SymbolicZonotope& a, const SymbolicZonotope& b);

/// Minkowski sum of independent sets: centers summed, generator columns and
/// labels concatenated. Throws LabelCollisionError if the label sets overlap;
/// relabel one operand first when the dependence is deliberately dropped.
SymbolicZonotope minkowski_sum(const SymbolicZonotope& a, const SymbolicZonotope& b);

/// A * Z: center and every generator premultiplied, labels preserved.
SymbolicZonotope linear_map(const Eigen::MatrixXd& a, const SymbolicZonotope& z);

/// Translate a set by a vector (Minkowski sum with a point).
SymbolicZonotope translate(const SymbolicZonotope& z, const Eigen::VectorXd& v);

/// Cartesian product. Generator matrix is the labeled sum of the zero-padded
/// blocks, so a label shared by both operands yields a single column spanning
/// both block rows (dependency preserved across the product).
SymbolicZonotope cartesian_product(const SymbolicZonotope& a, const SymbolicZonotope& b);

/// Tight axis-aligned bounds: c -/+ rowwise sum of |g_i|.
IntervalHull interval_hull(const SymbolicZonotope& z);
IntervalHull interval_hull(const Zonotope& z);

/// Copy of z without columns whose max-abs entry is below tol. Algebra never
/// prunes implicitly; cancellation keeps zero columns until compacted.
SymbolicZonotope compact(const SymbolicZonotope& z, double tol = 1e-14);

/// Copy of z with fresh labels for every column: same set, independent of
/// every other set in the run.
SymbolicZonotope relabel_fresh(const SymbolicZonotope& z, LabelRegistry& registry);

/// True iff some lambda with ||lambda||_inf <= 1 + tol satisfies
/// c + G*lambda = p within tol componentwise. Decided by a linear
/// feasibility program on the factor box; an infeasible program means false.
bool contains_point(const SymbolicZonotope& z, const Eigen::VectorXd& p,
                    double tol = 1e-9);

/// Vertices of the 2-D projection of z onto (dim_x, dim_y), counterclockwise.
/// Degenerate cases: no nonzero projected generators give a single vertex,
/// one direction gives the two segment endpoints.
std::vector<Eigen::Vector2d> project_polygon(const SymbolicZonotope& z,
                                             Eigen::Index dim_x, Eigen::Index dim_y);

}  // namespace armax_reach

#endif  // ARMAX_REACH_SYMBOLIC_ZONOTOPE_HPP_
