#include "armax_reach/labels.hpp"

#include <algorithm>
#include <stdexcept>

namespace armax_reach {

namespace {

struct ColumnRef {
  Label label;
  Eigen::Index col;
  int source;  // 0 = a, 1 = b
};

}  // namespace

LabeledMatrix labeled_add(const Eigen::MatrixXd& a_cols,
                          const std::vector<Label>& a_labels,
                          const Eigen::MatrixXd& b_cols,
                          const std::vector<Label>& b_labels) {
  if (a_cols.rows() != b_cols.rows()) {
    throw std::invalid_argument("labeled_add: operand row counts differ (" +
                                std::to_string(a_cols.rows()) + " vs " +
                                std::to_string(b_cols.rows()) + ")");
  }
  if (static_cast<std::size_t>(a_cols.cols()) != a_labels.size() ||
      static_cast<std::size_t>(b_cols.cols()) != b_labels.size()) {
    throw std::invalid_argument("labeled_add: label count must equal column count");
  }

  std::vector<ColumnRef> refs;
  refs.reserve(a_labels.size() + b_labels.size());
  for (std::size_t i = 0; i < a_labels.size(); ++i) {
    refs.push_back({a_labels[i], static_cast<Eigen::Index>(i), 0});
  }
  for (std::size_t i = 0; i < b_labels.size(); ++i) {
    refs.push_back({b_labels[i], static_cast<Eigen::Index>(i), 1});
  }
  std::sort(refs.begin(), refs.end(), [](const ColumnRef& x, const ColumnRef& y) {
    return x.label != y.label ? x.label < y.label : x.source < y.source;
  });

  const Eigen::Index n = a_cols.rows();
  LabeledMatrix out;
  out.columns.resize(n, static_cast<Eigen::Index>(refs.size()));
  out.labels.reserve(refs.size());

  Eigen::Index w = 0;
  for (std::size_t i = 0; i < refs.size();) {
    const Label l = refs[i].label;
    std::size_t j = i;
    while (j < refs.size() && refs[j].label == l) ++j;
    if (j - i > 2 || (j - i == 2 && refs[i].source == refs[i + 1].source)) {
      throw std::invalid_argument("labeled_add: duplicate label " + std::to_string(l) +
                                  " within one operand");
    }
    auto col = out.columns.col(w++);
    col = refs[i].source == 0 ? a_cols.col(refs[i].col) : b_cols.col(refs[i].col);
    for (std::size_t t = i + 1; t < j; ++t) {
      col += refs[t].source == 0 ? a_cols.col(refs[t].col) : b_cols.col(refs[t].col);
    }
    out.labels.push_back(l);
    i = j;
  }
  out.columns.conservativeResize(n, w);
  return out;
}

LabeledMatrix labeled_add(const LabeledMatrix& a, const LabeledMatrix& b) {
  return labeled_add(a.columns, a.labels, b.columns, b.labels);
}

}  // namespace armax_reach
