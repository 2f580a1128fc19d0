#include "spclust/types.hpp"

namespace spclust {

Assignment Assignment::from_labels(LabelVector labels, int n_clusters) {
  if (labels.empty()) {
    throw std::invalid_argument("assignment needs at least one sample");
  }
  if (n_clusters < 1) {
    throw std::invalid_argument("n_clusters must be >= 1");
  }
  Assignment a;
  a.n_clusters = n_clusters;
  a.counts.assign(static_cast<std::size_t>(n_clusters), 0);
  for (int label : labels) {
    if (label < 0 || label >= n_clusters) {
      throw std::invalid_argument("label " + std::to_string(label) +
                                  " outside [0, " +
                                  std::to_string(n_clusters) + ")");
    }
    ++a.counts[static_cast<std::size_t>(label)];
  }
  a.labels = std::move(labels);
  return a;
}

void Assignment::move(int sample, int to) {
  if (sample < 0 || sample >= n_samples()) {
    throw std::invalid_argument("sample index out of range");
  }
  if (to < 0 || to >= n_clusters) {
    throw std::invalid_argument("cluster index out of range");
  }
  int from = labels[static_cast<std::size_t>(sample)];
  if (from == to) return;
  --counts[static_cast<std::size_t>(from)];
  ++counts[static_cast<std::size_t>(to)];
  labels[static_cast<std::size_t>(sample)] = to;
}

Eigen::MatrixXd Assignment::indicator() const {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n_samples(), n_clusters);
  for (int i = 0; i < n_samples(); ++i) {
    g(i, labels[static_cast<std::size_t>(i)]) = 1.0;
  }
  return g;
}

void validate_data(const DataMatrix& x) {
  if (x.rows() < 1 || x.cols() < 1) {
    throw std::invalid_argument("data matrix must be nonempty");
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("data matrix has non-finite entries");
  }
}

}  // namespace spclust
