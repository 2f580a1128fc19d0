#pragma once

#include <optional>
#include <string>

#include "spclust/types.hpp"

namespace spclust {

enum class DistanceKernel { squared_euclidean, knn_masked, knn_geodesic };

// "euclidean", "knn-masked", "knn-geodesic"
const char* kernel_name(DistanceKernel k);
std::optional<DistanceKernel> kernel_from_name(const std::string& name);

// Disconnected pairs in the geodesic kernel get this factor times the
// largest finite squared path length, so the solver can still run on a
// disconnected neighborhood graph.
inline constexpr double kGeodesicDisconnectFactor = 4.0;

/// Pairwise dissimilarity matrix with the provenance of its construction.
///
/// values is symmetric with a zero diagonal and finite nonnegative entries;
/// every kernel below guarantees that, and validate_distance checks it.
struct DistanceMatrix {
  Eigen::MatrixXd values;
  DistanceKernel kernel = DistanceKernel::squared_euclidean;
  std::optional<int> knn_c;              // neighbor count for the knn kernels
  std::optional<double> penalty_factor;  // knn_masked masking penalty
  bool normalized = false;

  int size() const { return static_cast<int>(values.rows()); }
};

// Dense squared Euclidean distances. Each pair is computed once and
// mirrored, so the result is exactly symmetric.
DistanceMatrix squared_euclidean(const DataMatrix& x);

/// Squared Euclidean distances restricted to the symmetrized C-nearest
/// neighborhood.
///
/// An off-diagonal entry is kept when l is among the C nearest neighbors of
/// i or i is among the C nearest of l (neighbor ties broken toward the
/// smaller index). Every other off-diagonal entry is replaced with
/// penalty_factor * max(kept entries). With c = N - 1 the mask keeps
/// everything and the result equals squared_euclidean.
DistanceMatrix knn_masked(const DataMatrix& x, int c,
                          double penalty_factor = 1.0);

/// Squared shortest-path distances over the symmetrized C-nearest-neighbor
/// graph with (non-squared) Euclidean edge weights.
///
/// Pairs in different graph components get kGeodesicDisconnectFactor times
/// the largest finite squared path length.
DistanceMatrix knn_geodesic(const DataMatrix& x, int c);

// Rescales so the largest entry is exactly 1. Throws std::invalid_argument
// on an all-zero matrix.
DistanceMatrix normalize(DistanceMatrix d);

// Throws std::invalid_argument if values is not square, symmetric,
// zero-diagonal, nonnegative and finite.
void validate_distance(const DistanceMatrix& d);

}  // namespace spclust
