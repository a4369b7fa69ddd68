#include "armax_reach/symbolic_zonotope.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "armax_reach/errors.hpp"

namespace armax_reach {

namespace {

void check_labels(const Eigen::MatrixXd& generators, const std::vector<Label>& labels) {
  if (static_cast<std::size_t>(generators.cols()) != labels.size()) {
    throw std::invalid_argument("symbolic zonotope: label count (" +
                                std::to_string(labels.size()) +
                                ") must equal generator column count (" +
                                std::to_string(generators.cols()) + ")");
  }
  std::unordered_set<Label> seen;
  seen.reserve(labels.size());
  for (Label l : labels) {
    if (l == 0) throw std::invalid_argument("symbolic zonotope: labels must be positive");
    if (!seen.insert(l).second) {
      throw std::invalid_argument("symbolic zonotope: duplicate label " + std::to_string(l));
    }
  }
}

void check_dims(const SymbolicZonotope& a, const SymbolicZonotope& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
}

}  // namespace

void Zonotope::validate() const {
  if (center.size() != generators.rows()) {
    throw std::invalid_argument("zonotope: center length must equal generator row count");
  }
  if (!center.allFinite() || !generators.allFinite()) {
    throw std::invalid_argument("zonotope: entries must be finite");
  }
}

SymbolicZonotope::SymbolicZonotope(Eigen::VectorXd center, Eigen::MatrixXd generators,
                                   std::vector<Label> labels)
    : center_(std::move(center)), generators_(std::move(generators)),
      labels_(std::move(labels)) {
  if (center_.size() != generators_.rows()) {
    throw std::invalid_argument("symbolic zonotope: center length (" +
                                std::to_string(center_.size()) +
                                ") must equal generator row count (" +
                                std::to_string(generators_.rows()) + ")");
  }
  check_labels(generators_, labels_);
  if (!center_.allFinite() || !generators_.allFinite()) {
    throw std::invalid_argument("symbolic zonotope: entries must be finite");
  }
}

SymbolicZonotope SymbolicZonotope::point(Eigen::VectorXd center) {
  const Eigen::Index n = center.size();
  return trusted(std::move(center), Eigen::MatrixXd(n, 0), {});
}

SymbolicZonotope SymbolicZonotope::trusted(Eigen::VectorXd center,
                                           Eigen::MatrixXd generators,
                                           std::vector<Label> labels) {
  SymbolicZonotope z;
  z.center_ = std::move(center);
  z.generators_ = std::move(generators);
  if (z.generators_.rows() != z.center_.size() && z.generators_.cols() == 0) {
    z.generators_.resize(z.center_.size(), 0);
  }
  z.labels_ = std::move(labels);
  return z;
}

Eigen::VectorXd SymbolicZonotope::point_from_factors(const Eigen::VectorXd& lambda) const {
  if (lambda.size() != num_generators()) {
    throw std::invalid_argument("point_from_factors: factor count must equal generator count");
  }
  return center_ + generators_ * lambda;
}

SymbolicZonotope to_symbolic(const Zonotope& z, LabelRegistry& registry) {
  z.validate();
  return SymbolicZonotope::trusted(z.center, z.generators,
                                   registry.fresh_block(z.generators.cols()));
}

SymbolicZonotope exact_add(const SymbolicZonotope& a, const SymbolicZonotope& b) {
  check_dims(a, b, "exact_add");
  LabeledMatrix sum = labeled_add(a.generators(), a.labels(), b.generators(), b.labels());
  return SymbolicZonotope::trusted(a.center() + b.center(), std::move(sum.columns),
                                   std::move(sum.labels));
}

SymbolicZonotope minkowski_sum(const SymbolicZonotope& a, const SymbolicZonotope& b) {
  check_dims(a, b, "minkowski_sum");
  std::unordered_set<Label> seen(a.labels().begin(), a.labels().end());
  for (Label l : b.labels()) {
    if (seen.count(l)) {
      throw LabelCollisionError("minkowski_sum: operands share label " + std::to_string(l) +
                                "; relabel one operand or use exact_add");
    }
  }
  Eigen::MatrixXd gens(a.dim(), a.num_generators() + b.num_generators());
  gens << a.generators(), b.generators();
  std::vector<Label> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return SymbolicZonotope::trusted(a.center() + b.center(), std::move(gens),
                                   std::move(labels));
}

SymbolicZonotope linear_map(const Eigen::MatrixXd& a, const SymbolicZonotope& z) {
  if (a.cols() != z.dim()) {
    throw std::invalid_argument("linear_map: matrix has " + std::to_string(a.cols()) +
                                " columns but set dimension is " + std::to_string(z.dim()));
  }
  return SymbolicZonotope::trusted(a * z.center(), a * z.generators(), z.labels());
}

SymbolicZonotope translate(const SymbolicZonotope& z, const Eigen::VectorXd& v) {
  if (v.size() != z.dim()) {
    throw std::invalid_argument("translate: vector length must equal set dimension");
  }
  return SymbolicZonotope::trusted(z.center() + v, z.generators(), z.labels());
}

SymbolicZonotope cartesian_product(const SymbolicZonotope& a, const SymbolicZonotope& b) {
  const Eigen::Index na = a.dim(), nb = b.dim();
  Eigen::MatrixXd top = Eigen::MatrixXd::Zero(na + nb, a.num_generators());
  top.topRows(na) = a.generators();
  Eigen::MatrixXd bottom = Eigen::MatrixXd::Zero(na + nb, b.num_generators());
  bottom.bottomRows(nb) = b.generators();
  LabeledMatrix sum = labeled_add(top, a.labels(), bottom, b.labels());
  Eigen::VectorXd center(na + nb);
  center << a.center(), b.center();
  return SymbolicZonotope::trusted(std::move(center), std::move(sum.columns),
                                   std::move(sum.labels));
}

IntervalHull interval_hull(const SymbolicZonotope& z) {
  Eigen::VectorXd radius = z.generators().cwiseAbs().rowwise().sum();
  return {z.center() - radius, z.center() + radius};
}

IntervalHull interval_hull(const Zonotope& z) {
  Eigen::VectorXd radius = z.generators.cwiseAbs().rowwise().sum();
  return {z.center - radius, z.center + radius};
}

SymbolicZonotope compact(const SymbolicZonotope& z, double tol) {
  std::vector<Eigen::Index> keep;
  keep.reserve(z.num_generators());
  for (Eigen::Index i = 0; i < z.num_generators(); ++i) {
    if (z.generators().col(i).cwiseAbs().maxCoeff() >= tol) keep.push_back(i);
  }
  Eigen::MatrixXd gens(z.dim(), static_cast<Eigen::Index>(keep.size()));
  std::vector<Label> labels;
  labels.reserve(keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    gens.col(static_cast<Eigen::Index>(j)) = z.generators().col(keep[j]);
    labels.push_back(z.labels()[static_cast<std::size_t>(keep[j])]);
  }
  return SymbolicZonotope::trusted(z.center(), std::move(gens), std::move(labels));
}

SymbolicZonotope relabel_fresh(const SymbolicZonotope& z, LabelRegistry& registry) {
  return SymbolicZonotope::trusted(z.center(), z.generators(),
                                   registry.fresh_block(z.num_generators()));
}

}  // namespace armax_reach
