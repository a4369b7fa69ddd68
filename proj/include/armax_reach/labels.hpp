#ifndef ARMAX_REACH_LABELS_HPP_
#define ARMAX_REACH_LABELS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace armax_reach {

/// Positive integer identifying a symbolic factor. Generator columns in
/// different sets that carry the same label refer to the same factor.
using Label = std::uint64_t;

/// Issues globally unique labels for one analysis run. Strictly monotone and
/// never re-issues; a fresh label marks an independent generator.
class LabelRegistry {
 public:
  Label fresh() { return next_++; }

  std::vector<Label> fresh_block(Eigen::Index count) {
    std::vector<Label> out(static_cast<std::size_t>(count));
    for (auto& l : out) l = fresh();
    return out;
  }

  /// Next label that would be issued (labels < peek() are taken).
  Label peek() const { return next_; }

 private:
  Label next_ = 1;
};

/// Real matrix whose columns are tagged with pairwise distinct labels.
struct LabeledMatrix {
  Eigen::MatrixXd columns;    // n x q
  std::vector<Label> labels;  // size q

  Eigen::Index rows() const { return columns.rows(); }
  Eigen::Index cols() const { return columns.cols(); }
};

/// Sum of two labeled matrices: columns with identical labels are summed,
/// the rest are concatenated. Output columns are ordered by ascending label,
/// which makes the operation bit-exactly commutative.
LabeledMatrix labeled_add(const LabeledMatrix& a, const LabeledMatrix& b);

/// Same as above without materializing LabeledMatrix operands.
LabeledMatrix labeled_add(const Eigen::MatrixXd& a_cols,
                          const std::vector<Label>& a_labels,
                          const Eigen::MatrixXd& b_cols,
                          const std::vector<Label>& b_labels);

}  // namespace armax_reach

#endif  // ARMAX_REACH_LABELS_HPP_
