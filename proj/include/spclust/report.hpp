#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "spclust/baseline.hpp"
#include "spclust/distance.hpp"
#include "spclust/metrics.hpp"
#include "spclust/solver.hpp"

namespace spclust {

// Machine-readable run summary. Serialized with stable key order and full
// double precision, so a report plus the input bytes determines a
// byte-identical rerun of the labels.
using RunReport = nlohmann::ordered_json;

// "fnv1a64:" followed by a hex digest of the dimensions and raw entries.
std::string dataset_fingerprint(const DataMatrix& x);

RunReport make_solve_report(const SolverConfig& cfg, const DistanceMatrix& d,
                            const DataMatrix& x, const SolveResult& res,
                            const std::optional<MetricReport>& metrics,
                            std::optional<double> model2,
                            double wall_time_seconds,
                            const std::string& labels_path);

RunReport make_kmeans_report(int k, std::uint64_t seed, int max_iters,
                             const DataMatrix& x, const KmeansResult& res,
                             const std::optional<MetricReport>& metrics,
                             double wall_time_seconds,
                             const std::string& labels_path);

void emit_report(const RunReport& r, const std::string& path);

}  // namespace spclust
