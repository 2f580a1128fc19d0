#include "spclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spclust {

namespace {

void check_pair(const LabelVector& pred, const LabelVector& truth) {
  if (pred.empty()) {
    throw std::invalid_argument("label vectors must be nonempty");
  }
  if (pred.size() != truth.size()) {
    throw std::invalid_argument("label vectors must have equal length");
  }
}

std::int64_t comb2(std::int64_t n) { return n * (n - 1) / 2; }

// Maximum total over one-to-one row/column matchings of the contingency
// counts: O(n^3) assignment with potentials on the negated, square-padded
// table.
std::int64_t best_matching_total(const ContingencyTable& t) {
  const int n = std::max(t.k_pred, t.k_true);
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  auto cost = [&](int i, int j) -> std::int64_t {
    if (i < t.k_pred && j < t.k_true) return -t.at(i, j);
    return 0;
  };
  std::vector<std::int64_t> u(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> v(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> match(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      int i0 = match[static_cast<std::size_t>(j0)];
      int j1 = 0;
      std::int64_t delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        std::int64_t cur = cost(i0 - 1, j - 1) -
                           u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] +=
              delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] =
          match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0);
  }
  std::int64_t total = 0;
  for (int j = 1; j <= n; ++j) {
    total += cost(match[static_cast<std::size_t>(j)] - 1, j - 1);
  }
  return -total;
}

}  // namespace

ContingencyTable ContingencyTable::build(const LabelVector& pred,
                                         const LabelVector& truth) {
  check_pair(pred, truth);
  ContingencyTable t;
  t.n = static_cast<std::int64_t>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] < 0 || truth[i] < 0) {
      throw std::invalid_argument("labels must be nonnegative");
    }
    t.k_pred = std::max(t.k_pred, pred[i] + 1);
    t.k_true = std::max(t.k_true, truth[i] + 1);
  }
  t.cells.assign(
      static_cast<std::size_t>(t.k_pred) * static_cast<std::size_t>(t.k_true),
      0);
  t.pred_sizes.assign(static_cast<std::size_t>(t.k_pred), 0);
  t.true_sizes.assign(static_cast<std::size_t>(t.k_true), 0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++t.cells[static_cast<std::size_t>(pred[i]) * t.k_true + truth[i]];
    ++t.pred_sizes[static_cast<std::size_t>(pred[i])];
    ++t.true_sizes[static_cast<std::size_t>(truth[i])];
  }
  return t;
}

double accuracy(const LabelVector& pred, const LabelVector& truth) {
  ContingencyTable t = ContingencyTable::build(pred, truth);
  return static_cast<double>(best_matching_total(t)) /
         static_cast<double>(t.n);
}

double nmi(const LabelVector& pred, const LabelVector& truth) {
  ContingencyTable t = ContingencyTable::build(pred, truth);
  const double n = static_cast<double>(t.n);
  double h_pred = 0.0;
  for (std::int64_t s : t.pred_sizes) {
    if (s > 0) {
      double q = s / n;
      h_pred -= q * std::log(q);
    }
  }
  double h_true = 0.0;
  for (std::int64_t s : t.true_sizes) {
    if (s > 0) {
      double q = s / n;
      h_true -= q * std::log(q);
    }
  }
  bool pred_trivial = h_pred <= 0.0;
  bool true_trivial = h_true <= 0.0;
  // Two zero-entropy partitions are both all-in-one-cluster, hence equal.
  if (pred_trivial && true_trivial) return 1.0;
  if (pred_trivial || true_trivial) return 0.0;

  double mi = 0.0;
  for (int j = 0; j < t.k_pred; ++j) {
    for (int c = 0; c < t.k_true; ++c) {
      std::int64_t cell = t.at(j, c);
      if (cell == 0) continue;
      double joint = cell / n;
      mi += joint *
            std::log(joint /
                     ((t.pred_sizes[static_cast<std::size_t>(j)] / n) *
                      (t.true_sizes[static_cast<std::size_t>(c)] / n)));
    }
  }
  double value = mi / std::sqrt(h_pred * h_true);
  return std::clamp(value, 0.0, 1.0);
}

double purity(const LabelVector& pred, const LabelVector& truth) {
  ContingencyTable t = ContingencyTable::build(pred, truth);
  std::int64_t total = 0;
  for (int j = 0; j < t.k_pred; ++j) {
    std::int64_t best = 0;
    for (int c = 0; c < t.k_true; ++c) best = std::max(best, t.at(j, c));
    total += best;
  }
  return static_cast<double>(total) / static_cast<double>(t.n);
}

PairCounts pair_counts(const LabelVector& pred, const LabelVector& truth) {
  check_pair(pred, truth);
  if (pred.size() < 2) {
    throw std::invalid_argument("pair counts need at least two samples");
  }
  ContingencyTable t = ContingencyTable::build(pred, truth);
  std::int64_t together_both = 0;
  for (std::int64_t cell : t.cells) together_both += comb2(cell);
  std::int64_t together_pred = 0;
  for (std::int64_t s : t.pred_sizes) together_pred += comb2(s);
  std::int64_t together_true = 0;
  for (std::int64_t s : t.true_sizes) together_true += comb2(s);

  PairCounts pc;
  pc.same_same = together_both;
  pc.same_diff = together_pred - together_both;
  pc.diff_same = together_true - together_both;
  pc.diff_diff = comb2(t.n) - pc.same_same - pc.same_diff - pc.diff_same;
  return pc;
}

std::pair<double, double> precision_fscore(const LabelVector& pred,
                                           const LabelVector& truth) {
  PairCounts pc = pair_counts(pred, truth);
  std::int64_t pred_pairs = pc.same_same + pc.same_diff;
  std::int64_t true_pairs = pc.same_same + pc.diff_same;
  double precision =
      pred_pairs > 0
          ? static_cast<double>(pc.same_same) / static_cast<double>(pred_pairs)
          : 0.0;
  double recall =
      true_pairs > 0
          ? static_cast<double>(pc.same_same) / static_cast<double>(true_pairs)
          : 0.0;
  double fscore = precision + recall > 0.0
                      ? 2.0 * precision * recall / (precision + recall)
                      : 0.0;
  return {precision, fscore};
}

double ari(const LabelVector& pred, const LabelVector& truth) {
  PairCounts pc = pair_counts(pred, truth);
  // No pair-level disagreement at all means the partitions coincide; this
  // also covers the degenerate cases where the general formula hits 0 / 0.
  if (pc.same_diff == 0 && pc.diff_same == 0) return 1.0;
  double together_pred = static_cast<double>(pc.same_same + pc.same_diff);
  double together_true = static_cast<double>(pc.same_same + pc.diff_same);
  double all_pairs = static_cast<double>(pc.same_same + pc.same_diff +
                                         pc.diff_same + pc.diff_diff);
  double expected = together_pred * together_true / all_pairs;
  double max_index = (together_pred + together_true) / 2.0;
  return (static_cast<double>(pc.same_same) - expected) /
         (max_index - expected);
}

MetricReport evaluate_all(const LabelVector& pred, const LabelVector& truth) {
  MetricReport r;
  r.acc = accuracy(pred, truth);
  r.nmi = nmi(pred, truth);
  r.purity = purity(pred, truth);
  auto [precision, fscore] = precision_fscore(pred, truth);
  r.precision = precision;
  r.fscore = fscore;
  r.ari = ari(pred, truth);
  return r;
}

}  // namespace spclust
