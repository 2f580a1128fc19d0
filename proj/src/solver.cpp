#include "spclust/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

#include "spclust/rng.hpp"
#include "spclust/schatten.hpp"

namespace spclust {

const char* init_name(InitMethod m) {
  switch (m) {
    case InitMethod::random_balanced:
      return "random-balanced";
    case InitMethod::kmeans_pp:
      return "kmeans-pp";
  }
  return "unknown";
}

std::optional<InitMethod> init_from_name(const std::string& name) {
  if (name == "random-balanced") return InitMethod::random_balanced;
  if (name == "kmeans-pp") return InitMethod::kmeans_pp;
  return std::nullopt;
}

namespace {

void check_shapes(const DistanceMatrix& d, const Assignment& g) {
  if (g.n_samples() != d.size()) {
    throw std::invalid_argument("assignment and distance matrix disagree on N");
  }
}

void check_config(const DistanceMatrix& d, const SolverConfig& cfg) {
  validate_distance(d);
  if (!(cfg.alpha >= 0.0)) {
    throw std::invalid_argument("alpha must be >= 0");
  }
  if (!(cfg.p > 0.0)) {
    throw std::invalid_argument("p must be > 0");
  }
  if (cfg.k < 2) {
    throw std::invalid_argument("k must be >= 2");
  }
  if (cfg.k > d.size()) {
    throw std::invalid_argument("k must not exceed the number of samples");
  }
  if (cfg.max_sweeps < 1) {
    throw std::invalid_argument("max_sweeps must be >= 1");
  }
  if (cfg.tol < 0.0) {
    throw std::invalid_argument("tol must be >= 0");
  }
}

LabelVector init_random_balanced(int n, int k, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  LabelVector labels(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])] =
        t % k;
  }
  return labels;
}

// Spread-out seeding driven by the distance matrix itself: the first
// center is uniform, later ones are drawn proportionally to the distance
// from the nearest chosen center; samples then join their nearest center.
LabelVector init_kmeans_pp(const DistanceMatrix& d, int k, Rng& rng) {
  const int n = d.size();
  std::vector<int> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  std::vector<double> nearest(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nearest[static_cast<std::size_t>(i)] = d.values(i, centers[0]);
  }
  for (int t = 1; t < k; ++t) {
    double total =
        std::accumulate(nearest.begin(), nearest.end(), 0.0);
    int next = -1;
    if (total > 0.0) {
      double r = rng.uniform() * total;
      double cum = 0.0;
      for (int i = 0; i < n; ++i) {
        cum += nearest[static_cast<std::size_t>(i)];
        if (r < cum) {
          next = i;
          break;
        }
      }
      if (next < 0) next = n - 1;  // r landed on accumulated rounding
    } else {
      // Every sample coincides with a center; take the smallest index not
      // already chosen so the seeding stays deterministic.
      for (int i = 0; i < n; ++i) {
        if (std::find(centers.begin(), centers.end(), i) == centers.end()) {
          next = i;
          break;
        }
      }
    }
    centers.push_back(next);
    for (int i = 0; i < n; ++i) {
      nearest[static_cast<std::size_t>(i)] = std::min(
          nearest[static_cast<std::size_t>(i)], d.values(i, next));
    }
  }
  LabelVector labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_dist = d.values(i, centers[0]);
    for (int j = 1; j < k; ++j) {
      double dist = d.values(i, centers[static_cast<std::size_t>(j)]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

// Refills empty clusters from the largest one; returns the number of
// samples moved.
int repair_empty_clusters(const DistanceMatrix& d, Assignment& g) {
  int moves = 0;
  for (int j = 0; j < g.n_clusters; ++j) {
    if (g.counts[static_cast<std::size_t>(j)] != 0) continue;
    int src = -1;
    for (int jj = 0; jj < g.n_clusters; ++jj) {
      if (g.counts[static_cast<std::size_t>(jj)] >= 2 &&
          (src < 0 || g.counts[static_cast<std::size_t>(jj)] >
                          g.counts[static_cast<std::size_t>(src)])) {
        src = jj;
      }
    }
    if (src < 0) break;  // nothing left to split
    int best_sample = -1;
    double best_sum = -1.0;
    for (int i = 0; i < g.n_samples(); ++i) {
      if (g.labels[static_cast<std::size_t>(i)] != src) continue;
      double sum = 0.0;
      for (int l = 0; l < g.n_samples(); ++l) {
        if (g.labels[static_cast<std::size_t>(l)] == src) sum += d.values(l, i);
      }
      if (sum > best_sum) {
        best_sum = sum;
        best_sample = i;
      }
    }
    g.move(best_sample, j);
    ++moves;
  }
  return moves;
}

SolveResult run_sweeps(const DistanceMatrix& d, const SolverConfig& cfg,
                       LabelVector initial_labels) {
  Assignment g = Assignment::from_labels(std::move(initial_labels), cfg.k);
  check_shapes(d, g);

  if (cfg.p > 2.0) {
    std::cerr << "warning: p = " << cfg.p
              << " > 2 rewards concentrating samples in few clusters; "
                 "the size bonus no longer favors balanced assignments\n";
  }

  SolveTrace trace;
  trace.degenerate_input = d.values.maxCoeff() <= 0.0;

  double prev = objective(d, g, cfg.alpha, cfg.p);
  trace.objective_per_sweep.push_back(prev);

  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    Eigen::MatrixXd f =
        schatten_p_gradient(g.indicator(), cfg.p, cfg.sigma_floor);
    int changed = 0;
    for (int i = 0; i < g.n_samples(); ++i) {
      int to = row_update(d, g, f, cfg.alpha, i);
      int from = g.labels[static_cast<std::size_t>(i)];
      if (to != from) {
        g.move(i, to);
        ++changed;
        if (g.counts[static_cast<std::size_t>(from)] == 0) {
          ++trace.empty_cluster_events;
        }
      }
    }
    int repaired = cfg.repair_empty ? repair_empty_clusters(d, g) : 0;

    double cur = objective(d, g, cfg.alpha, cfg.p);
    trace.objective_per_sweep.push_back(cur);
    trace.sweeps_run = sweep;

    if (changed == 0 && repaired == 0) {
      trace.converged = true;
      break;
    }
    if (cfg.tol > 0.0 && std::abs(cur - prev) <= cfg.tol) {
      trace.converged = true;
      break;
    }
    prev = cur;
  }
  return {std::move(g), std::move(trace)};
}

}  // namespace

double objective(const DistanceMatrix& d, const Assignment& g, double alpha,
                 double p) {
  check_shapes(d, g);
  if (!(p > 0.0)) {
    throw std::invalid_argument("p must be > 0");
  }
  const int n = g.n_samples();
  double within = 0.0;
  for (int i = 0; i < n; ++i) {
    int label = g.labels[static_cast<std::size_t>(i)];
    for (int l = 0; l < n; ++l) {
      if (g.labels[static_cast<std::size_t>(l)] == label) {
        within += d.values(l, i);
      }
    }
  }
  double bonus = 0.0;
  for (int j = 0; j < g.n_clusters; ++j) {
    int c = g.counts[static_cast<std::size_t>(j)];
    if (c > 0) bonus += std::pow(static_cast<double>(c), p / 2.0);
  }
  return within - alpha * bonus;
}

int row_update(const DistanceMatrix& d, const Assignment& g,
               const Eigen::MatrixXd& f, double alpha, int i) {
  check_shapes(d, g);
  if (i < 0 || i >= g.n_samples()) {
    throw std::invalid_argument("sample index out of range");
  }
  if (f.rows() != g.n_samples() || f.cols() != g.n_clusters) {
    throw std::invalid_argument("gradient shape must be N x K");
  }
  const int n = g.n_samples();
  std::vector<double> cluster_sum(static_cast<std::size_t>(g.n_clusters),
                                  0.0);
  for (int l = 0; l < n; ++l) {
    cluster_sum[static_cast<std::size_t>(
        g.labels[static_cast<std::size_t>(l)])] += d.values(l, i);
  }
  int best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n_clusters; ++j) {
    double score =
        2.0 * cluster_sum[static_cast<std::size_t>(j)] - alpha * f(i, j);
    if (score < best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

SolveResult solve(const DistanceMatrix& d, const SolverConfig& cfg) {
  check_config(d, cfg);
  Rng rng(cfg.seed);
  LabelVector labels = cfg.init == InitMethod::random_balanced
                           ? init_random_balanced(d.size(), cfg.k, rng)
                           : init_kmeans_pp(d, cfg.k, rng);
  return run_sweeps(d, cfg, std::move(labels));
}

SolveResult solve(const DistanceMatrix& d, const SolverConfig& cfg,
                  const LabelVector& initial_labels) {
  check_config(d, cfg);
  if (static_cast<int>(initial_labels.size()) != d.size()) {
    throw std::invalid_argument("initial labels must have one entry per sample");
  }
  return run_sweeps(d, cfg, initial_labels);
}

double model2_diagnostic(const DistanceMatrix& d, const Assignment& g) {
  check_shapes(d, g);
  for (int j = 0; j < g.n_clusters; ++j) {
    if (g.counts[static_cast<std::size_t>(j)] == 0) {
      throw std::logic_error("cluster " + std::to_string(j) +
                             " is empty; the per-cluster scaling is undefined");
    }
  }
  const int n = g.n_samples();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    int label = g.labels[static_cast<std::size_t>(i)];
    double inv = 1.0 / g.counts[static_cast<std::size_t>(label)];
    for (int l = 0; l < n; ++l) {
      if (g.labels[static_cast<std::size_t>(l)] == label) {
        total += d.values(l, i) * inv;
      }
    }
  }
  return total;
}

}  // namespace spclust
