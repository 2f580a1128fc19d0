// Command-line frontend: solve and baseline runs, synthetic dataset
// generation, and metric sweeps over parameter grids.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spclust/baseline.hpp"
#include "spclust/datasets.hpp"
#include "spclust/distance.hpp"
#include "spclust/metrics.hpp"
#include "spclust/report.hpp"
#include "spclust/solver.hpp"

namespace {

// Flag combinations CLI11 cannot check on its own; reported on stderr with
// exit code 2 like any other usage problem.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double_token(const std::string& token, const char* flag) {
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty()) {
    throw UsageError(std::string("cannot parse '") + token + "' in " + flag);
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& s, const char* flag) {
  std::vector<double> out;
  std::string cur;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(parse_double_token(cur, flag));
      cur.clear();
    } else {
      cur.push_back(s[i]);
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const char* flag) {
  std::vector<int> out;
  for (double v : parse_double_list(s, flag)) {
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw UsageError(std::string(flag) + " takes integers");
    }
    out.push_back(i);
  }
  return out;
}

// Where the samples come from: a CSV on disk or a built-in generator.
struct SourceOptions {
  std::string input;
  std::string gen;
  int n = 400;
  double turns = 1.5;
  std::optional<double> noise;
  std::optional<int> label_column;
  bool skip_header = false;
};

void add_source_flags(CLI::App* cmd, SourceOptions& src) {
  cmd->add_option("--input", src.input, "CSV file with one sample per row");
  cmd->add_option("--gen", src.gen,
                  "generate a dataset instead: two-moon or two-spiral");
  cmd->add_option("--n", src.n, "generated sample count (default 400)");
  cmd->add_option("--noise", src.noise,
                  "generator noise std (default 0.05 moons, 0.02 spirals)");
  cmd->add_option("--turns", src.turns,
                  "spiral rotations (default 1.5)");
  cmd->add_option("--label-column", src.label_column,
                  "0-based CSV column holding ground-truth labels");
  cmd->add_flag("--header", src.skip_header, "skip the first CSV line");
}

struct LoadedData {
  spclust::DataMatrix x;
  std::optional<spclust::LabelVector> truth;
};

LoadedData load_source(const SourceOptions& src, std::uint64_t seed) {
  if (!src.input.empty() && !src.gen.empty()) {
    throw UsageError("--input and --gen are mutually exclusive");
  }
  if (src.input.empty() && src.gen.empty()) {
    throw UsageError("one of --input or --gen is required");
  }
  LoadedData out;
  if (!src.gen.empty()) {
    spclust::Dataset d;
    if (src.gen == "two-moon") {
      d = spclust::generate_two_moon(src.n, src.noise.value_or(0.05), seed);
    } else if (src.gen == "two-spiral") {
      d = spclust::generate_two_spiral(src.n, src.turns,
                                       src.noise.value_or(0.02), seed);
    } else {
      throw UsageError("--gen must be two-moon or two-spiral, got '" +
                       src.gen + "'");
    }
    out.x = std::move(d.points);
    out.truth = std::move(d.labels);
  } else {
    auto loaded = spclust::load_csv(src.input, src.label_column,
                                    src.skip_header);
    out.x = std::move(loaded.features);
    out.truth = std::move(loaded.labels);
  }
  return out;
}

struct KernelOptions {
  std::string kernel = "euclidean";
  std::optional<int> c;
  double penalty_factor = 1.0;
  bool normalize = false;
};

// Registers everything but --c, whose type differs between solve (one
// value) and sweep (a list).
void add_kernel_flags(CLI::App* cmd, KernelOptions& ker) {
  cmd->add_option("--kernel", ker.kernel,
                  "euclidean, knn-masked or knn-geodesic (default euclidean)");
  cmd->add_option("--penalty-factor", ker.penalty_factor,
                  "knn-masked penalty multiple of the largest kept entry");
  cmd->add_flag("--normalize-distance", ker.normalize,
                "rescale distances so the largest entry is 1");
}

spclust::DistanceKernel checked_kernel(const KernelOptions& ker) {
  auto k = spclust::kernel_from_name(ker.kernel);
  if (!k) {
    throw UsageError("unknown kernel '" + ker.kernel + "'");
  }
  if (*k == spclust::DistanceKernel::squared_euclidean) {
    if (ker.c) throw UsageError("--c requires a knn kernel");
  } else if (!ker.c) {
    throw UsageError("--kernel " + ker.kernel + " requires --c");
  } else if (*ker.c < 1) {
    throw UsageError("--c must be >= 1");
  }
  return *k;
}

spclust::DistanceMatrix build_distance(const spclust::DataMatrix& x,
                                       const KernelOptions& ker, int c) {
  spclust::DistanceMatrix d;
  switch (checked_kernel(ker)) {
    case spclust::DistanceKernel::squared_euclidean:
      d = spclust::squared_euclidean(x);
      break;
    case spclust::DistanceKernel::knn_masked:
      d = spclust::knn_masked(x, c, ker.penalty_factor);
      break;
    case spclust::DistanceKernel::knn_geodesic:
      d = spclust::knn_geodesic(x, c);
      break;
  }
  if (ker.normalize) d = spclust::normalize(std::move(d));
  return d;
}

std::optional<spclust::MetricReport> score(
    const spclust::LabelVector& pred,
    const std::optional<spclust::LabelVector>& truth) {
  if (!truth) return std::nullopt;
  return spclust::evaluate_all(pred, *truth);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// gen: write a synthetic dataset and its labels.
struct GenOptions {
  std::string name;
  SourceOptions src;
  std::uint64_t seed = 0;
  std::string out_data = "data.csv";
  std::string out_labels = "labels.csv";
};

int run_gen(const GenOptions& opt) {
  SourceOptions src = opt.src;
  src.gen = opt.name;
  src.input.clear();
  auto data = load_source(src, opt.seed);
  spclust::save_csv(opt.out_data, data.x);
  spclust::save_labels(opt.out_labels, *data.truth);
  std::cout << "wrote " << data.x.rows() << " samples to " << opt.out_data
            << " and labels to " << opt.out_labels << "\n";
  return 0;
}

// solve: one solver run with labels, report and optional metrics.
struct SolveOptions {
  SourceOptions src;
  KernelOptions ker;
  double alpha = 0.0;
  double p = 2.0;
  int k = 2;
  int max_sweeps = 100;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string init = "random-balanced";
  bool repair_empty = false;
  std::string out_labels = "labels.csv";
  std::string out_report = "report.json";
  std::string save_distance;
};

int run_solve(const SolveOptions& opt) {
  auto init = spclust::init_from_name(opt.init);
  if (!init) throw UsageError("unknown --init '" + opt.init + "'");

  auto start = std::chrono::steady_clock::now();
  auto data = load_source(opt.src, opt.seed);
  auto d = build_distance(data.x, opt.ker, opt.ker.c.value_or(0));
  if (!opt.save_distance.empty()) {
    spclust::save_csv(opt.save_distance, d.values);
  }

  spclust::SolverConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.p = opt.p;
  cfg.k = opt.k;
  cfg.max_sweeps = opt.max_sweeps;
  cfg.tol = opt.tol;
  cfg.seed = opt.seed;
  cfg.init = *init;
  cfg.repair_empty = opt.repair_empty;

  auto res = spclust::solve(d, cfg);
  spclust::save_labels(opt.out_labels, res.assignment.labels);

  auto metrics = score(res.assignment.labels, data.truth);
  std::optional<double> model2;
  bool any_empty = false;
  for (int count : res.assignment.counts) any_empty |= count == 0;
  if (!any_empty) model2 = spclust::model2_diagnostic(d, res.assignment);

  auto report =
      spclust::make_solve_report(cfg, d, data.x, res, metrics, model2,
                                 seconds_since(start), opt.out_labels);
  spclust::emit_report(report, opt.out_report);

  std::cout << "objective " << res.trace.objective_per_sweep.back() << " after "
            << res.trace.sweeps_run << " sweeps ("
            << (res.trace.converged ? "converged" : "sweep budget reached");
  if (metrics) std::cout << ", acc " << metrics->acc;
  std::cout << "); labels in " << opt.out_labels << ", report in "
            << opt.out_report << "\n";
  return 0;
}

// kmeans: the baseline on raw features.
struct KmeansOptions {
  SourceOptions src;
  int k = 2;
  int max_iters = 100;
  std::uint64_t seed = 0;
  std::string out_labels = "labels.csv";
  std::string out_report = "report.json";
};

int run_kmeans(const KmeansOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  auto data = load_source(opt.src, opt.seed);
  auto res = spclust::kmeans(data.x, opt.k, opt.seed, opt.max_iters);
  spclust::save_labels(opt.out_labels, res.assignment.labels);
  auto metrics = score(res.assignment.labels, data.truth);
  auto report =
      spclust::make_kmeans_report(opt.k, opt.seed, opt.max_iters, data.x, res,
                                  metrics, seconds_since(start),
                                  opt.out_labels);
  spclust::emit_report(report, opt.out_report);

  std::cout << "objective " << res.objective_per_iter.back() << " after "
            << res.iterations << " iterations";
  if (metrics) std::cout << ", acc " << metrics->acc;
  std::cout << "; labels in " << opt.out_labels << ", report in "
            << opt.out_report << "\n";
  return 0;
}

// sweep: metrics for every grid cell, one CSV row each.
struct SweepOptions {
  SourceOptions src;
  KernelOptions ker;
  std::string alpha_list = "1e1,1e2,1e3,1e4";
  std::string p_list;
  std::string c_list;
  int k = 2;
  int max_sweeps = 100;
  std::uint64_t seed = 0;
  std::string init = "random-balanced";
  bool repair_empty = false;
  std::string out_csv = "sweep.csv";
};

int run_sweep(const SweepOptions& opt) {
  auto init = spclust::init_from_name(opt.init);
  if (!init) throw UsageError("unknown --init '" + opt.init + "'");

  std::vector<double> alphas = parse_double_list(opt.alpha_list, "--alpha");
  std::vector<double> ps;
  if (opt.p_list.empty()) {
    for (int i = 1; i <= 20; ++i) ps.push_back(i / 10.0);
  } else {
    ps = parse_double_list(opt.p_list, "--p");
  }

  KernelOptions ker = opt.ker;
  std::vector<int> cs;
  bool euclid = ker.kernel == "euclidean";
  if (!opt.c_list.empty()) {
    if (euclid) throw UsageError("--c requires a knn kernel");
    cs = parse_int_list(opt.c_list, "--c");
  } else {
    cs = euclid ? std::vector<int>{0} : std::vector<int>{10};
  }

  auto data = load_source(opt.src, opt.seed);
  if (!data.truth) {
    throw UsageError(
        "sweep needs ground truth: use --gen or --label-column");
  }

  std::ofstream out(opt.out_csv, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + opt.out_csv +
                             "' for writing");
  }
  out << "alpha,p,c,acc,nmi,purity,precision,fscore,ari,objective,sweeps\n";

  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.12g%c", v, sep);
    out << buf;
  };

  int rows = 0;
  for (int c : cs) {
    ker.c = euclid ? std::nullopt : std::optional<int>(c);
    auto d = build_distance(data.x, ker, c);
    for (double alpha : alphas) {
      for (double p : ps) {
        spclust::SolverConfig cfg;
        cfg.alpha = alpha;
        cfg.p = p;
        cfg.k = opt.k;
        cfg.max_sweeps = opt.max_sweeps;
        cfg.seed = opt.seed;
        cfg.init = *init;
        cfg.repair_empty = opt.repair_empty;
        auto res = spclust::solve(d, cfg);
        auto m = spclust::evaluate_all(res.assignment.labels, *data.truth);
        put(alpha, ',');
        put(p, ',');
        out << c << ',';
        put(m.acc, ',');
        put(m.nmi, ',');
        put(m.purity, ',');
        put(m.precision, ',');
        put(m.fscore, ',');
        put(m.ari, ',');
        put(res.trace.objective_per_sweep.back(), ',');
        out << res.trace.sweeps_run << '\n';
        ++rows;
      }
    }
  }
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + opt.out_csv + "' failed");
  }
  std::cout << "wrote " << rows << " grid cells to " << opt.out_csv << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Clustering via pairwise-distance minimization with a singular-value "
      "cluster-size bonus"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic dataset");
  gen_cmd->add_option("dataset", gen.name, "two-moon or two-spiral")
      ->required();
  gen_cmd->add_option("--n", gen.src.n, "sample count (default 400)");
  gen_cmd->add_option("--noise", gen.src.noise,
                      "noise std (default 0.05 moons, 0.02 spirals)");
  gen_cmd->add_option("--turns", gen.src.turns, "spiral rotations");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--out-data", gen.out_data, "feature CSV path");
  gen_cmd->add_option("--out-labels", gen.out_labels, "label file path");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "run the solver");
  add_source_flags(solve_cmd, solve.src);
  add_kernel_flags(solve_cmd, solve.ker);
  solve_cmd->add_option("--c", solve.ker.c,
                        "neighbor count for the knn kernels");
  solve_cmd->add_option("--alpha", solve.alpha,
                        "cluster-size bonus weight (default 0)");
  solve_cmd->add_option("--p", solve.p, "bonus exponent (default 2)");
  solve_cmd->add_option("--k", solve.k, "cluster count (default 2)");
  solve_cmd->add_option("--max-sweeps", solve.max_sweeps,
                        "sweep budget (default 100)");
  solve_cmd->add_option("--tol", solve.tol,
                        "stop when the objective changes at most this much");
  solve_cmd->add_option("--seed", solve.seed,
                        "seed for generation and initialization");
  solve_cmd->add_option("--init", solve.init,
                        "random-balanced or kmeans-pp");
  solve_cmd->add_flag("--repair-empty", solve.repair_empty,
                      "refill clusters that lose all members");
  solve_cmd->add_option("--out-labels", solve.out_labels, "label file path");
  solve_cmd->add_option("--out-report", solve.out_report, "report path");
  solve_cmd->add_option("--save-distance", solve.save_distance,
                        "dump the distance matrix actually used");

  KmeansOptions kmeans;
  auto* kmeans_cmd = app.add_subcommand("kmeans", "run the baseline");
  add_source_flags(kmeans_cmd, kmeans.src);
  kmeans_cmd->add_option("--k", kmeans.k, "cluster count (default 2)");
  kmeans_cmd->add_option("--max-iters", kmeans.max_iters,
                         "iteration budget (default 100)");
  kmeans_cmd->add_option("--seed", kmeans.seed, "seed");
  kmeans_cmd->add_option("--out-labels", kmeans.out_labels,
                         "label file path");
  kmeans_cmd->add_option("--out-report", kmeans.out_report, "report path");

  SweepOptions sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "score a grid of alpha, p and c values");
  add_source_flags(sweep_cmd, sweep.src);
  add_kernel_flags(sweep_cmd, sweep.ker);
  sweep_cmd->add_option("--c", sweep.c_list,
                        "comma-separated neighbor counts (default 10)");
  sweep_cmd->add_option("--alpha", sweep.alpha_list,
                        "comma-separated alphas (default 1e1,1e2,1e3,1e4)");
  sweep_cmd->add_option("--p", sweep.p_list,
                        "comma-separated exponents (default 0.1..2.0)");
  sweep_cmd->add_option("--k", sweep.k, "cluster count (default 2)");
  sweep_cmd->add_option("--max-sweeps", sweep.max_sweeps, "sweep budget");
  sweep_cmd->add_option("--seed", sweep.seed, "seed");
  sweep_cmd->add_option("--init", sweep.init,
                        "random-balanced or kmeans-pp");
  sweep_cmd->add_flag("--repair-empty", sweep.repair_empty,
                      "refill clusters that lose all members");
  sweep_cmd->add_option("--out-csv", sweep.out_csv, "metrics CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (kmeans_cmd->parsed()) return run_kmeans(kmeans);
    return run_sweep(sweep);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
