#include "spclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <doctest.h>

#include "spclust/rng.hpp"

namespace {

using spclust::LabelVector;
using spclust::PairCounts;

// Reference pair counts by enumerating every unordered sample pair.
PairCounts pair_counts_brute(const LabelVector& pred, const LabelVector& truth) {
  PairCounts pc;
  const int n = static_cast<int>(pred.size());
  for (int i = 0; i < n; ++i) {
    for (int l = i + 1; l < n; ++l) {
      bool sp = pred[i] == pred[l];
      bool st = truth[i] == truth[l];
      if (sp && st)
        ++pc.same_same;
      else if (sp)
        ++pc.same_diff;
      else if (st)
        ++pc.diff_same;
      else
        ++pc.diff_diff;
    }
  }
  return pc;
}

// Reference accuracy: maximize matched samples over every one-to-one map
// between cluster ids, by checking all permutations of the larger id set.
double accuracy_brute(const LabelVector& pred, const LabelVector& truth) {
  int kp = 1 + *std::max_element(pred.begin(), pred.end());
  int kt = 1 + *std::max_element(truth.begin(), truth.end());
  int k = std::max(kp, kt);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = 0;
  do {
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
      if (perm[pred[i]] == truth[i]) ++hits;
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

// Reference NMI from joint counts, written independently of the library.
double nmi_brute(const LabelVector& pred, const LabelVector& truth) {
  const double n = static_cast<double>(pred.size());
  std::map<int, double> cp, ct;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    cp[pred[i]] += 1;
    ct[truth[i]] += 1;
    joint[{pred[i], truth[i]}] += 1;
  }
  auto entropy = [n](const std::map<int, double>& c) {
    double h = 0;
    for (const auto& [id, cnt] : c) h -= cnt / n * std::log(cnt / n);
    return h;
  };
  double hp = entropy(cp), ht = entropy(ct);
  if (hp == 0 && ht == 0) return 1.0;
  if (hp == 0 || ht == 0) return 0.0;
  double mi = 0;
  for (const auto& [jc, cnt] : joint) {
    double pj = cnt / n;
    mi += pj * std::log(pj / ((cp.at(jc.first) / n) * (ct.at(jc.second) / n)));
  }
  return mi / std::sqrt(hp * ht);
}

LabelVector random_labels(spclust::Rng& rng, int n, int k) {
  LabelVector v(n);
  for (int& x : v) x = static_cast<int>(rng.below(k));
  return v;
}

// Renames cluster ids through a random permutation.
LabelVector relabeled(spclust::Rng& rng, const LabelVector& v) {
  int k = 1 + *std::max_element(v.begin(), v.end());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  LabelVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = perm[v[i]];
  return out;
}

}  // namespace

TEST_CASE("contingency table cross-tabulates and keeps marginals consistent") {
  LabelVector pred{0, 0, 1, 1, 2};
  LabelVector truth{0, 1, 1, 1, 0};
  auto t = spclust::ContingencyTable::build(pred, truth);
  CHECK(t.k_pred == 3);
  CHECK(t.k_true == 2);
  CHECK(t.n == 5);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.at(0, 1) == 1);
  CHECK(t.at(1, 1) == 2);
  CHECK(t.at(2, 0) == 1);
  std::int64_t total = std::accumulate(t.cells.begin(), t.cells.end(),
                                       std::int64_t{0});
  CHECK(total == t.n);
  for (int j = 0; j < t.k_pred; ++j) {
    std::int64_t row = 0;
    for (int c = 0; c < t.k_true; ++c) row += t.at(j, c);
    CHECK(row == t.pred_sizes[j]);
  }
  for (int c = 0; c < t.k_true; ++c) {
    std::int64_t col = 0;
    for (int j = 0; j < t.k_pred; ++j) col += t.at(j, c);
    CHECK(col == t.true_sizes[c]);
  }
}

TEST_CASE("contingency table rejects bad input") {
  CHECK_THROWS_AS(spclust::ContingencyTable::build({0, 1}, {0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spclust::ContingencyTable::build({}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spclust::ContingencyTable::build({0, -1}, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("accuracy on frozen instances") {
  CHECK(spclust::accuracy({0, 1, 2}, {0, 1, 2}) == 1.0);
  CHECK(spclust::accuracy({2, 0, 1}, {0, 1, 2}) == 1.0);  // relabeled copy
  CHECK(spclust::accuracy({0, 0, 1, 1}, {0, 1, 1, 1}) == 0.75);
}

TEST_CASE("accuracy matches the permutation-search reference") {
  spclust::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng.below(30));
    int kp = 1 + static_cast<int>(rng.below(5));
    int kt = 1 + static_cast<int>(rng.below(5));
    auto pred = random_labels(rng, n, kp);
    auto truth = random_labels(rng, n, kt);
    CHECK(spclust::accuracy(pred, truth) ==
          doctest::Approx(accuracy_brute(pred, truth)).epsilon(1e-12));
  }
}

TEST_CASE("nmi conventions and frozen instances") {
  CHECK(spclust::nmi({0, 1, 0, 1}, {1, 0, 1, 0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spclust::nmi({0, 0, 0}, {0, 0, 0}) == 1.0);       // both single-cluster
  CHECK(spclust::nmi({0, 0, 0, 0}, {0, 1, 0, 1}) == 0.0); // one side trivial
  CHECK(spclust::nmi({0, 1, 0, 1}, {0, 0, 0, 0}) == 0.0);
  // Independent partitions carry no mutual information.
  CHECK(spclust::nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == 0.0);
}

TEST_CASE("nmi matches the direct entropy reference") {
  spclust::Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng.below(40));
    auto pred = random_labels(rng, n, 1 + static_cast<int>(rng.below(4)));
    auto truth = random_labels(rng, n, 1 + static_cast<int>(rng.below(4)));
    CHECK(spclust::nmi(pred, truth) ==
          doctest::Approx(nmi_brute(pred, truth)).epsilon(1e-10));
  }
}

TEST_CASE("purity on frozen instances") {
  CHECK(spclust::purity({0, 1, 2}, {0, 1, 2}) == 1.0);
  CHECK(spclust::purity({0, 0, 1, 1}, {0, 1, 1, 1}) == 0.75);
  // Singleton clusters are trivially pure.
  CHECK(spclust::purity({0, 1, 2, 3}, {0, 0, 1, 1}) == 1.0);
}

TEST_CASE("pair counts on frozen instances") {
  auto pc = spclust::pair_counts({0, 0, 1, 1}, {0, 0, 1, 1});
  CHECK(pc.same_same == 2);
  CHECK(pc.same_diff == 0);
  CHECK(pc.diff_same == 0);
  CHECK(pc.diff_diff == 4);

  auto singletons = spclust::pair_counts({0, 1, 2, 3}, {0, 0, 1, 1});
  CHECK(singletons.same_same == 0);
  CHECK(singletons.same_diff == 0);
}

TEST_CASE("pair counts match the brute-force pair loop") {
  spclust::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(49));
    auto pred = random_labels(rng, n, 1 + static_cast<int>(rng.below(6)));
    auto truth = random_labels(rng, n, 1 + static_cast<int>(rng.below(6)));
    auto fast = spclust::pair_counts(pred, truth);
    auto slow = pair_counts_brute(pred, truth);
    CHECK(fast.same_same == slow.same_same);
    CHECK(fast.same_diff == slow.same_diff);
    CHECK(fast.diff_same == slow.diff_same);
    CHECK(fast.diff_diff == slow.diff_diff);
    std::int64_t n64 = n;
    CHECK(fast.same_same + fast.same_diff + fast.diff_same + fast.diff_diff ==
          n64 * (n64 - 1) / 2);
  }
}

TEST_CASE("pairwise precision and F-score on frozen instances") {
  auto perfect = spclust::precision_fscore({0, 0, 1}, {0, 0, 1});
  CHECK(perfect.first == 1.0);
  CHECK(perfect.second == 1.0);

  // pairs: together-in-both 1, pred-only 1, truth-only 2,
  // so precision 1/2, recall 1/3, harmonic mean 0.4.
  auto mixed = spclust::precision_fscore({0, 0, 1, 1}, {0, 1, 1, 1});
  CHECK(mixed.first == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mixed.second == doctest::Approx(0.4).epsilon(1e-12));

  // All-singleton prediction has no same-cluster pairs at all.
  auto degenerate = spclust::precision_fscore({0, 1, 2, 3}, {0, 0, 1, 1});
  CHECK(degenerate.first == 0.0);
  CHECK(degenerate.second == 0.0);
}

TEST_CASE("adjusted Rand index on frozen instances") {
  CHECK(spclust::ari({0, 1, 0, 1}, {1, 0, 1, 0}) == 1.0);
  CHECK(spclust::ari({0, 0, 0}, {0, 0, 0}) == 1.0);  // degenerate but identical
  CHECK(spclust::ari({0, 1, 2}, {0, 1, 2}) == 1.0);
  // Crossed 2+2 partitions: pair counts (0, 2, 2, 2), index 0, expected
  // index 2*2/6, maximum 2, so (0 - 2/3) / (2 - 2/3) = -1/2.
  CHECK(spclust::ari({0, 0, 1, 1}, {0, 1, 0, 1}) ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("adjusted Rand index is near zero for random partitions") {
  spclust::Rng rng(14);
  double sum = 0;
  const int trials = 50;
  for (int trial = 0; trial < trials; ++trial) {
    auto pred = random_labels(rng, 200, 4);
    auto truth = random_labels(rng, 200, 4);
    sum += spclust::ari(pred, truth);
  }
  CHECK(std::abs(sum / trials) <= 0.1);
}

TEST_CASE("all metrics are invariant to relabeling either side") {
  spclust::Rng rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 4 + static_cast<int>(rng.below(40));
    auto pred = random_labels(rng, n, 2 + static_cast<int>(rng.below(4)));
    auto truth = random_labels(rng, n, 2 + static_cast<int>(rng.below(4)));
    auto base = spclust::evaluate_all(pred, truth);
    auto moved = spclust::evaluate_all(relabeled(rng, pred),
                                       relabeled(rng, truth));
    CHECK(moved.acc == doctest::Approx(base.acc).epsilon(1e-12));
    CHECK(moved.nmi == doctest::Approx(base.nmi).epsilon(1e-12));
    CHECK(moved.purity == doctest::Approx(base.purity).epsilon(1e-12));
    CHECK(moved.precision == doctest::Approx(base.precision).epsilon(1e-12));
    CHECK(moved.fscore == doctest::Approx(base.fscore).epsilon(1e-12));
    CHECK(moved.ari == doctest::Approx(base.ari).epsilon(1e-12));
  }
}

TEST_CASE("accuracy never exceeds purity") {
  spclust::Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.below(50));
    auto pred = random_labels(rng, n, 1 + static_cast<int>(rng.below(5)));
    auto truth = random_labels(rng, n, 1 + static_cast<int>(rng.below(5)));
    CHECK(spclust::accuracy(pred, truth) <=
          spclust::purity(pred, truth) + 1e-12);
  }
}

TEST_CASE("self-comparison attains every maximum") {
  spclust::Rng rng(17);
  auto v = random_labels(rng, 30, 4);
  auto r = spclust::evaluate_all(v, v);
  CHECK(r.acc == 1.0);
  CHECK(r.nmi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.purity == 1.0);
  CHECK(r.precision == 1.0);
  CHECK(r.fscore == 1.0);
  CHECK(r.ari == 1.0);
  CHECK(r.nmi_normalization == spclust::kNmiNormalization);
}

TEST_CASE("metric preconditions") {
  CHECK_THROWS_AS(spclust::accuracy({0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(spclust::nmi({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(spclust::pair_counts({0}, {0}), std::invalid_argument);
}
