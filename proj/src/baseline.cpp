#include "spclust/baseline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "spclust/rng.hpp"

namespace spclust {

namespace {

// Assigns every sample to its nearest centroid (ties toward the smaller
// index); returns how many labels changed.
int assign_step(const DataMatrix& x, const Eigen::MatrixXd& centroids,
                Assignment& g) {
  int changed = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    double best_dist = (x.row(i) - centroids.row(0)).squaredNorm();
    for (Eigen::Index j = 1; j < centroids.rows(); ++j) {
      double dist = (x.row(i) - centroids.row(j)).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (g.labels[static_cast<std::size_t>(i)] != best) {
      g.move(static_cast<int>(i), best);
      ++changed;
    }
  }
  return changed;
}

// Recomputes centroids as cluster means; an emptied cluster jumps to the
// sample farthest from its own centroid. Returns the number of re-seeded
// clusters.
int update_step(const DataMatrix& x, Assignment& g,
                Eigen::MatrixXd& centroids) {
  const int k = g.n_clusters;
  int reseeded = 0;
  for (int j = 0; j < k; ++j) {
    if (g.counts[static_cast<std::size_t>(j)] == 0) continue;
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (g.labels[static_cast<std::size_t>(i)] == j) mean += x.row(i);
    }
    centroids.row(j) = mean / g.counts[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < k; ++j) {
    if (g.counts[static_cast<std::size_t>(j)] != 0) continue;
    int farthest = 0;
    double far_dist = -1.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      int label = g.labels[static_cast<std::size_t>(i)];
      double dist = (x.row(i) - centroids.row(label)).squaredNorm();
      if (dist > far_dist) {
        far_dist = dist;
        farthest = static_cast<int>(i);
      }
    }
    centroids.row(j) = x.row(farthest);
    ++reseeded;
  }
  return reseeded;
}

double centroid_objective(const DataMatrix& x, const Assignment& g,
                          const Eigen::MatrixXd& centroids) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    total +=
        (x.row(i) - centroids.row(g.labels[static_cast<std::size_t>(i)]))
            .squaredNorm();
  }
  return total;
}

}  // namespace

KmeansResult kmeans(const DataMatrix& x, int k, std::uint64_t seed,
                    int max_iters) {
  validate_data(x);
  const int n = static_cast<int>(x.rows());
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > n) throw std::invalid_argument("k must not exceed the sample count");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

  Rng rng(seed);

  // k-means++ seeding: later centers are drawn with probability
  // proportional to the squared distance from the nearest chosen center.
  std::vector<int> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd nearest =
      (x.rowwise() - x.row(centers[0])).rowwise().squaredNorm();
  for (int t = 1; t < k; ++t) {
    double total = nearest.sum();
    int next = -1;
    if (total > 0.0) {
      double r = rng.uniform() * total;
      double cum = 0.0;
      for (int i = 0; i < n; ++i) {
        cum += nearest(i);
        if (r < cum) {
          next = i;
          break;
        }
      }
      if (next < 0) next = n - 1;
    } else {
      for (int i = 0; i < n; ++i) {
        if (std::find(centers.begin(), centers.end(), i) == centers.end()) {
          next = i;
          break;
        }
      }
    }
    centers.push_back(next);
    nearest = nearest.cwiseMin(
        (x.rowwise() - x.row(next)).rowwise().squaredNorm());
  }

  Eigen::MatrixXd centroids(k, x.cols());
  for (int j = 0; j < k; ++j) centroids.row(j) = x.row(centers[static_cast<std::size_t>(j)]);

  KmeansResult res;
  res.assignment =
      Assignment::from_labels(LabelVector(static_cast<std::size_t>(n), 0), k);
  assign_step(x, centroids, res.assignment);
  int reseeded = update_step(x, res.assignment, centroids);
  res.objective_per_iter.push_back(
      centroid_objective(x, res.assignment, centroids));
  res.iterations = 1;

  for (int iter = 2; iter <= max_iters; ++iter) {
    int changed = assign_step(x, centroids, res.assignment);
    if (changed == 0 && reseeded == 0) {
      res.converged = true;
      break;
    }
    reseeded = update_step(x, res.assignment, centroids);
    res.objective_per_iter.push_back(
        centroid_objective(x, res.assignment, centroids));
    res.iterations = iter;
  }
  res.centroids = std::move(centroids);
  return res;
}

double kmeans_objective(const DataMatrix& x, const Assignment& g) {
  validate_data(x);
  if (g.n_samples() != static_cast<int>(x.rows())) {
    throw std::invalid_argument("assignment and data disagree on N");
  }
  double total = 0.0;
  for (int j = 0; j < g.n_clusters; ++j) {
    int count = g.counts[static_cast<std::size_t>(j)];
    if (count == 0) continue;
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (g.labels[static_cast<std::size_t>(i)] == j) mean += x.row(i);
    }
    mean /= count;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (g.labels[static_cast<std::size_t>(i)] == j) {
        total += (x.row(i) - mean).squaredNorm();
      }
    }
  }
  return total;
}

double manifold_objective(const DataMatrix& x, const Assignment& g) {
  validate_data(x);
  if (g.n_samples() != static_cast<int>(x.rows())) {
    throw std::invalid_argument("assignment and data disagree on N");
  }
  std::vector<std::vector<int>> members(
      static_cast<std::size_t>(g.n_clusters));
  for (int i = 0; i < g.n_samples(); ++i) {
    members[static_cast<std::size_t>(g.labels[static_cast<std::size_t>(i)])]
        .push_back(i);
  }
  double total = 0.0;
  for (int j = 0; j < g.n_clusters; ++j) {
    const auto& ids = members[static_cast<std::size_t>(j)];
    if (ids.empty()) {
      throw std::logic_error("cluster " + std::to_string(j) +
                             " is empty; the per-cluster weight is undefined");
    }
    double inv = 1.0 / static_cast<double>(ids.size());
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        double sq = (x.row(ids[a]) - x.row(ids[b])).squaredNorm();
        total += 2.0 * sq * inv;  // ordered pairs (a,b) and (b,a)
      }
    }
  }
  return total;
}

}  // namespace spclust
