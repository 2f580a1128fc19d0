#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spclust {

// Feature matrix, one sample per row.
using DataMatrix = Eigen::MatrixXd;
using LabelVector = std::vector<int>;

// CSV parse failure carrying a 1-based row/column location.
class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(const std::string& what, std::size_t row, std::size_t column)
      : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                           std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// Hard partition of N samples into K clusters.
///
/// labels[i] is the cluster of sample i; counts[j] is the number of samples
/// with label j and is kept in sync by move().
struct Assignment {
  LabelVector labels;
  std::vector<int> counts;
  int n_clusters = 0;

  static Assignment from_labels(LabelVector labels, int n_clusters);

  int n_samples() const { return static_cast<int>(labels.size()); }

  // Relabel one sample, updating counts.
  void move(int sample, int to);

  // Dense one-hot indicator, N x K.
  Eigen::MatrixXd indicator() const;
};

// Throws std::invalid_argument unless x is nonempty with finite entries.
void validate_data(const DataMatrix& x);

}  // namespace spclust
