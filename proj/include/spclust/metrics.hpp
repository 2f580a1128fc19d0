#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spclust/types.hpp"

namespace spclust {

// Cross-tabulation of two labelings of the same samples.
struct ContingencyTable {
  int k_pred = 0;
  int k_true = 0;
  std::int64_t n = 0;
  std::vector<std::int64_t> cells;       // k_pred x k_true, row-major
  std::vector<std::int64_t> pred_sizes;  // row marginals
  std::vector<std::int64_t> true_sizes;  // column marginals

  static ContingencyTable build(const LabelVector& pred,
                                const LabelVector& truth);

  std::int64_t at(int j, int c) const {
    return cells[static_cast<std::size_t>(j) * k_true + c];
  }
};

// Unordered sample pairs split by co-membership in the two partitions.
struct PairCounts {
  std::int64_t same_same = 0;  // together in both
  std::int64_t same_diff = 0;  // together in pred only
  std::int64_t diff_same = 0;  // together in truth only
  std::int64_t diff_diff = 0;  // separated in both
};

// Clustering accuracy under the best one-to-one cluster matching, found by
// an optimal-assignment search on the contingency table (rectangular
// tables are padded with zero rows/columns). Label-permutation invariant.
double accuracy(const LabelVector& pred, const LabelVector& truth);

// Mutual information normalized by the geometric mean of the entropies
// (natural logs). Two single-cluster partitions score 1; if exactly one
// partition has zero entropy the score is 0.
double nmi(const LabelVector& pred, const LabelVector& truth);

// Fraction of samples in the majority true class of their cluster.
double purity(const LabelVector& pred, const LabelVector& truth);

// Computed from contingency-table combinatorics, not by enumerating the
// O(N^2) pairs. Requires at least two samples.
PairCounts pair_counts(const LabelVector& pred, const LabelVector& truth);

// Pair-level precision and F-score. Zero denominators yield 0.
std::pair<double, double> precision_fscore(const LabelVector& pred,
                                           const LabelVector& truth);

// Adjusted Rand index. Identical partitions score 1, including the
// degenerate single-cluster and all-singleton cases.
double ari(const LabelVector& pred, const LabelVector& truth);

inline constexpr const char* kNmiNormalization = "geometric-mean";

struct MetricReport {
  double acc = 0;
  double nmi = 0;
  double purity = 0;
  double precision = 0;
  double fscore = 0;
  double ari = 0;
  // Which NMI normalization produced the value above.
  std::string nmi_normalization = kNmiNormalization;
};

MetricReport evaluate_all(const LabelVector& pred, const LabelVector& truth);

}  // namespace spclust
