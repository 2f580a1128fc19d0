#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spclust/distance.hpp"
#include "spclust/types.hpp"

namespace spclust {

enum class InitMethod { random_balanced, kmeans_pp };

// "random-balanced", "kmeans-pp"
const char* init_name(InitMethod m);
std::optional<InitMethod> init_from_name(const std::string& name);

struct SolverConfig {
  double alpha = 0.0;  // weight of the cluster-size bonus; must be >= 0
  double p = 2.0;      // bonus exponent; must be > 0
  int k = 2;           // number of clusters; 2 <= k <= N
  int max_sweeps = 100;
  double tol = 0.0;    // objective-change stop; 0 stops on label fixpoint only
  std::uint64_t seed = 0;
  InitMethod init = InitMethod::random_balanced;
  bool repair_empty = false;
  double sigma_floor = 1e-10;  // relative floor passed to the gradient
};

struct SolveTrace {
  // Entry 0 is the objective of the initial assignment, followed by one
  // entry per completed sweep.
  std::vector<double> objective_per_sweep;
  int sweeps_run = 0;
  bool converged = false;
  // Row commits that left their source cluster empty.
  int empty_cluster_events = 0;
  // Set when the distance matrix is identically zero (e.g. all samples
  // coincide); the solve still completes but the data carries no signal.
  bool degenerate_input = false;
};

struct SolveResult {
  Assignment assignment;
  SolveTrace trace;
};

// tr(G^T D G) - alpha * sum_j counts[j]^(p/2). The first term sums D over
// ordered same-cluster pairs; the second uses the singular values of the
// indicator, which are the square roots of the cluster sizes.
double objective(const DistanceMatrix& d, const Assignment& g, double alpha,
                 double p);

/// Best cluster for sample i with the bonus gradient f held fixed:
/// argmin_j 2 * sum_{l in j} D(l, i) - alpha * f(i, j).
///
/// The sum runs over all current members of cluster j (the i term vanishes
/// because D(i, i) = 0). Ties break toward the smallest index. Pure query:
/// the caller commits the move.
int row_update(const DistanceMatrix& d, const Assignment& g,
               const Eigen::MatrixXd& f, double alpha, int i);

/// Minimizes objective() over hard assignments by sweeping row_update over
/// all samples with immediate commits.
///
/// The gradient of the bonus term is recomputed once per sweep from the
/// assignment the sweep starts with. For p >= 1 the bonus is convex, the
/// linearization majorizes it, and the traced objective never increases;
/// for p < 1 descent is not guaranteed. p > 2 is accepted with a warning
/// on stderr, because there the bonus rewards concentrating samples in few
/// clusters rather than balancing them.
SolveResult solve(const DistanceMatrix& d, const SolverConfig& cfg);

// Same, but from an explicit initial labeling instead of cfg.init.
SolveResult solve(const DistanceMatrix& d, const SolverConfig& cfg,
                  const LabelVector& initial_labels);

// sum_j (1/n_j) sum_{i,l in j} D(i, l). Reporting-only diagnostic; throws
// std::logic_error when a cluster is empty.
double model2_diagnostic(const DistanceMatrix& d, const Assignment& g);

}  // namespace spclust
