#include "spclust/report.hpp"

#include <chrono>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "spclust/rng.hpp"

namespace spclust {

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

nlohmann::ordered_json metrics_json(const MetricReport& m) {
  nlohmann::ordered_json j;
  j["acc"] = m.acc;
  j["nmi"] = m.nmi;
  j["purity"] = m.purity;
  j["precision"] = m.precision;
  j["fscore"] = m.fscore;
  j["ari"] = m.ari;
  j["nmi_normalization"] = m.nmi_normalization;
  return j;
}

nlohmann::ordered_json dataset_json(const DataMatrix& x) {
  nlohmann::ordered_json j;
  j["n_samples"] = static_cast<int>(x.rows());
  j["n_features"] = static_cast<int>(x.cols());
  j["content_hash"] = dataset_fingerprint(x);
  return j;
}

}  // namespace

std::string dataset_fingerprint(const DataMatrix& x) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::int64_t rows = x.rows();
  std::int64_t cols = x.cols();
  hash_bytes(h, &rows, sizeof(rows));
  hash_bytes(h, &cols, sizeof(cols));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      double v = x(r, c);
      hash_bytes(h, &v, sizeof(v));
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

RunReport make_solve_report(const SolverConfig& cfg, const DistanceMatrix& d,
                            const DataMatrix& x, const SolveResult& res,
                            const std::optional<MetricReport>& metrics,
                            std::optional<double> model2,
                            double wall_time_seconds,
                            const std::string& labels_path) {
  RunReport r;
  r["command"] = "solve";

  nlohmann::ordered_json config;
  config["alpha"] = cfg.alpha;
  config["p"] = cfg.p;
  config["k"] = cfg.k;
  config["max_sweeps"] = cfg.max_sweeps;
  config["tol"] = cfg.tol;
  config["seed"] = cfg.seed;
  config["init"] = init_name(cfg.init);
  config["repair_empty"] = cfg.repair_empty;
  config["sigma_floor"] = cfg.sigma_floor;
  config["kernel"] = kernel_name(d.kernel);
  if (d.knn_c) config["knn_c"] = *d.knn_c;
  if (d.penalty_factor) config["penalty_factor"] = *d.penalty_factor;
  if (d.kernel == DistanceKernel::knn_geodesic) {
    config["geodesic_disconnect_factor"] = kGeodesicDisconnectFactor;
  }
  config["normalized_distance"] = d.normalized;
  config["rng"] = Rng::kAlgorithmId;
  r["config"] = config;

  r["dataset"] = dataset_json(x);

  nlohmann::ordered_json trace;
  trace["objective_per_sweep"] = res.trace.objective_per_sweep;
  trace["sweeps_run"] = res.trace.sweeps_run;
  trace["converged"] = res.trace.converged;
  trace["empty_cluster_events"] = res.trace.empty_cluster_events;
  trace["degenerate_input"] = res.trace.degenerate_input;
  r["trace"] = trace;

  r["objective"] = res.trace.objective_per_sweep.back();
  if (model2) r["scaled_within_cluster_sum"] = *model2;
  r["cluster_counts"] = res.assignment.counts;
  if (metrics) r["metrics"] = metrics_json(*metrics);
  r["labels_path"] = labels_path;
  r["wall_time_seconds"] = wall_time_seconds;
  return r;
}

RunReport make_kmeans_report(int k, std::uint64_t seed, int max_iters,
                             const DataMatrix& x, const KmeansResult& res,
                             const std::optional<MetricReport>& metrics,
                             double wall_time_seconds,
                             const std::string& labels_path) {
  RunReport r;
  r["command"] = "kmeans";

  nlohmann::ordered_json config;
  config["k"] = k;
  config["seed"] = seed;
  config["max_iters"] = max_iters;
  config["init"] = "k-means++";
  config["rng"] = Rng::kAlgorithmId;
  r["config"] = config;

  r["dataset"] = dataset_json(x);

  nlohmann::ordered_json trace;
  trace["objective_per_iter"] = res.objective_per_iter;
  trace["iterations"] = res.iterations;
  trace["converged"] = res.converged;
  r["trace"] = trace;

  r["objective"] = res.objective_per_iter.back();
  r["cluster_counts"] = res.assignment.counts;
  if (metrics) r["metrics"] = metrics_json(*metrics);
  r["labels_path"] = labels_path;
  r["wall_time_seconds"] = wall_time_seconds;
  return r;
}

void emit_report(const RunReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << r.dump(2) << '\n';
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

}  // namespace spclust
