#pragma once

#include <cstdint>
#include <vector>

#include "spclust/types.hpp"

namespace spclust {

struct KmeansResult {
  Assignment assignment;
  Eigen::MatrixXd centroids;  // K x d
  // One entry per Lloyd iteration, recorded after the centroid update.
  std::vector<double> objective_per_iter;
  int iterations = 0;
  bool converged = false;
};

/// Lloyd's algorithm with k-means++ seeding.
///
/// Deterministic for a fixed seed. Assignment ties break toward the
/// smaller centroid index; a cluster that loses all members is re-seeded
/// with the sample currently farthest from its own centroid.
KmeansResult kmeans(const DataMatrix& x, int k, std::uint64_t seed,
                    int max_iters = 100);

// Within-cluster sum of squared distances to the cluster means implied by
// g. Empty clusters contribute nothing.
double kmeans_objective(const DataMatrix& x, const Assignment& g);

/// sum_{i,l} ||x_i - x_l||^2 * m(i,l) where m(i,l) is 1/n_j when i and l
/// share cluster j and 0 otherwise.
///
/// Evaluated cluster by cluster from that factored form; the dense N x N
/// weight matrix is never materialized. Equals exactly twice
/// kmeans_objective for every assignment without empty clusters; empty
/// clusters throw std::logic_error since 1/n_j is undefined.
double manifold_objective(const DataMatrix& x, const Assignment& g);

}  // namespace spclust
