#include "spclust/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace spclust {

const char* kernel_name(DistanceKernel k) {
  switch (k) {
    case DistanceKernel::squared_euclidean:
      return "euclidean";
    case DistanceKernel::knn_masked:
      return "knn-masked";
    case DistanceKernel::knn_geodesic:
      return "knn-geodesic";
  }
  return "unknown";
}

std::optional<DistanceKernel> kernel_from_name(const std::string& name) {
  if (name == "euclidean") return DistanceKernel::squared_euclidean;
  if (name == "knn-masked") return DistanceKernel::knn_masked;
  if (name == "knn-geodesic") return DistanceKernel::knn_geodesic;
  return std::nullopt;
}

DistanceMatrix squared_euclidean(const DataMatrix& x) {
  validate_data(x);
  const Eigen::Index n = x.rows();
  DistanceMatrix d;
  d.kernel = DistanceKernel::squared_euclidean;
  d.values = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index l = i + 1; l < n; ++l) {
      double v = (x.row(i) - x.row(l)).squaredNorm();
      d.values(i, l) = v;
      d.values(l, i) = v;
    }
  }
  return d;
}

namespace {

void check_neighbor_count(int c, Eigen::Index n) {
  if (c < 1 || c > n - 1) {
    throw std::invalid_argument("neighbor count must be in [1, N-1], got " +
                                std::to_string(c) + " for N = " +
                                std::to_string(n));
  }
}

// Indices of the c nearest neighbors of each sample under sq(i, l), ties
// broken toward the smaller index.
std::vector<std::vector<int>> nearest_neighbors(const Eigen::MatrixXd& sq,
                                                int c) {
  const int n = static_cast<int>(sq.rows());
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> order;
  order.reserve(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int l = 0; l < n; ++l) {
      if (l != i) order.emplace_back(sq(l, i), l);
    }
    std::partial_sort(order.begin(), order.begin() + c, order.end());
    auto& list = nbrs[static_cast<std::size_t>(i)];
    list.reserve(static_cast<std::size_t>(c));
    for (int t = 0; t < c; ++t) list.push_back(order[static_cast<std::size_t>(t)].second);
  }
  return nbrs;
}

}  // namespace

DistanceMatrix knn_masked(const DataMatrix& x, int c, double penalty_factor) {
  validate_data(x);
  check_neighbor_count(c, x.rows());
  if (!(penalty_factor > 0.0)) {
    throw std::invalid_argument("penalty_factor must be > 0");
  }

  DistanceMatrix d = squared_euclidean(x);
  const int n = d.size();
  std::vector<std::vector<int>> nbrs = nearest_neighbors(d.values, c);

  // A pair survives when either endpoint lists the other as a neighbor.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> keep(n, n);
  keep.setConstant(false);
  for (int i = 0; i < n; ++i) {
    for (int l : nbrs[static_cast<std::size_t>(i)]) {
      keep(i, l) = true;
      keep(l, i) = true;
    }
  }

  double max_kept = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int l = i + 1; l < n; ++l) {
      if (keep(i, l)) max_kept = std::max(max_kept, d.values(i, l));
    }
  }
  double penalty = penalty_factor * max_kept;
  for (int i = 0; i < n; ++i) {
    for (int l = i + 1; l < n; ++l) {
      if (!keep(i, l)) {
        d.values(i, l) = penalty;
        d.values(l, i) = penalty;
      }
    }
  }

  d.kernel = DistanceKernel::knn_masked;
  d.knn_c = c;
  d.penalty_factor = penalty_factor;
  return d;
}

DistanceMatrix knn_geodesic(const DataMatrix& x, int c) {
  validate_data(x);
  check_neighbor_count(c, x.rows());

  DistanceMatrix base = squared_euclidean(x);
  const int n = base.size();
  std::vector<std::vector<int>> nbrs = nearest_neighbors(base.values, c);

  // Symmetrized neighbor graph with Euclidean (non-squared) edge weights.
  std::vector<std::vector<std::pair<int, double>>> adj(
      static_cast<std::size_t>(n));
  {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> edge(n, n);
    edge.setConstant(false);
    for (int i = 0; i < n; ++i) {
      for (int l : nbrs[static_cast<std::size_t>(i)]) {
        edge(i, l) = true;
        edge(l, i) = true;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        if (edge(i, l)) {
          adj[static_cast<std::size_t>(i)].emplace_back(
              l, std::sqrt(base.values(i, l)));
        }
      }
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd geo(n, n);
  std::vector<double> dist(static_cast<std::size_t>(n));
  using HeapItem = std::pair<double, int>;
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), inf);
    dist[static_cast<std::size_t>(src)] = 0.0;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[static_cast<std::size_t>(u)]) continue;
      for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
        double alt = du + w;
        if (alt < dist[static_cast<std::size_t>(v)]) {
          dist[static_cast<std::size_t>(v)] = alt;
          heap.emplace(alt, v);
        }
      }
    }
    for (int l = 0; l < n; ++l) {
      double g = dist[static_cast<std::size_t>(l)];
      geo(src, l) = std::isinf(g) ? inf : g * g;
    }
  }

  // The per-source runs agree on path lengths but may differ in the last
  // bit through summation order; mirror the upper triangle so the matrix
  // is exactly symmetric.
  double max_finite = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int l = i + 1; l < n; ++l) {
      geo(l, i) = geo(i, l);
      if (std::isfinite(geo(i, l))) {
        max_finite = std::max(max_finite, geo(i, l));
      }
    }
  }
  double penalty = kGeodesicDisconnectFactor * max_finite;
  for (int i = 0; i < n; ++i) {
    geo(i, i) = 0.0;
    for (int l = i + 1; l < n; ++l) {
      if (std::isinf(geo(i, l))) {
        geo(i, l) = penalty;
        geo(l, i) = penalty;
      }
    }
  }

  DistanceMatrix d;
  d.values = std::move(geo);
  d.kernel = DistanceKernel::knn_geodesic;
  d.knn_c = c;
  return d;
}

DistanceMatrix normalize(DistanceMatrix d) {
  validate_distance(d);
  double max = d.values.maxCoeff();
  if (max <= 0.0) {
    throw std::invalid_argument("cannot normalize an all-zero distance matrix");
  }
  d.values /= max;
  d.normalized = true;
  return d;
}

void validate_distance(const DistanceMatrix& d) {
  const Eigen::Index n = d.values.rows();
  if (n < 1 || d.values.cols() != n) {
    throw std::invalid_argument("distance matrix must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d.values(i, i) != 0.0) {
      throw std::invalid_argument("distance matrix diagonal must be zero");
    }
    for (Eigen::Index l = i + 1; l < n; ++l) {
      double v = d.values(i, l);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(
            "distance entries must be finite and nonnegative");
      }
      if (v != d.values(l, i)) {
        throw std::invalid_argument("distance matrix must be symmetric");
      }
    }
  }
}

}  // namespace spclust
