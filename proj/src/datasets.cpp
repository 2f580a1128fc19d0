#include "spclust/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "spclust/rng.hpp"

namespace spclust {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_arc_count(int n_samples) {
  if (n_samples < 4 || n_samples % 2 != 0) {
    throw std::invalid_argument("n_samples must be even and >= 4, got " +
                                std::to_string(n_samples));
  }
}

void check_noise(double noise_std) {
  if (!(noise_std >= 0.0)) {
    throw std::invalid_argument("noise_std must be >= 0");
  }
}

}  // namespace

Dataset generate_two_moon(int n_samples, double noise_std,
                          std::uint64_t seed) {
  check_arc_count(n_samples);
  check_noise(noise_std);

  const int m = n_samples / 2;
  Rng rng(seed);
  Dataset out;
  out.points.resize(n_samples, 2);
  out.labels.assign(static_cast<std::size_t>(n_samples), 0);

  for (int i = 0; i < m; ++i) {
    double t = kPi * i / (m - 1);
    out.points(i, 0) = std::cos(t) + noise_std * rng.gaussian();
    out.points(i, 1) = std::sin(t) + noise_std * rng.gaussian();
  }
  for (int i = 0; i < m; ++i) {
    double t = kPi * i / (m - 1);
    out.points(m + i, 0) = 1.0 - std::cos(t) + noise_std * rng.gaussian();
    out.points(m + i, 1) = 0.5 - std::sin(t) + noise_std * rng.gaussian();
    out.labels[static_cast<std::size_t>(m + i)] = 1;
  }
  return out;
}

Dataset generate_two_spiral(int n_samples, double turns, double noise_std,
                            std::uint64_t seed) {
  check_arc_count(n_samples);
  check_noise(noise_std);
  if (!(turns > 0.0)) {
    throw std::invalid_argument("turns must be > 0");
  }

  const int m = n_samples / 2;
  // Starting away from angle 0 keeps the inner endpoints of the two arms
  // at distinct points instead of a shared origin.
  const double theta0 = kPi / 2.0;
  const double theta_end = theta0 + 2.0 * kPi * turns;

  Rng rng(seed);
  Dataset out;
  out.points.resize(n_samples, 2);
  out.labels.assign(static_cast<std::size_t>(n_samples), 0);

  for (int arm = 0; arm < 2; ++arm) {
    double rot = arm * kPi;
    for (int i = 0; i < m; ++i) {
      double theta = theta0 + (theta_end - theta0) * i / (m - 1);
      double r = theta / theta_end;
      int row = arm * m + i;
      out.points(row, 0) =
          r * std::cos(theta + rot) + noise_std * rng.gaussian();
      out.points(row, 1) =
          r * std::sin(theta + rot) + noise_std * rng.gaussian();
      out.labels[static_cast<std::size_t>(row)] = arm;
    }
  }
  return out;
}

namespace {

// Splits one CSV line; cells may be padded with spaces.
std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string_view trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string_view(s).substr(b, e - b);
}

double parse_double_cell(const std::string& cell, std::size_t row,
                         std::size_t col) {
  std::string_view v = trimmed(cell);
  double value = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw CsvParseError("cannot parse '" + std::string(v) + "' as a number",
                        row, col);
  }
  if (!std::isfinite(value)) {
    throw CsvParseError("non-finite value", row, col);
  }
  return value;
}

long long parse_label_cell(const std::string& cell, std::size_t row,
                           std::size_t col) {
  std::string_view v = trimmed(cell);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw CsvParseError(
        "cannot parse '" + std::string(v) + "' as an integer label", row, col);
  }
  return value;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // A single trailing newline produces no phantom row; interior blank
  // lines are kept and reported as parse errors below.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

LoadedCsv load_csv(const std::string& path, std::optional<int> label_column,
                   bool skip_header) {
  std::vector<std::string> lines = read_lines(path);
  std::size_t first = skip_header ? 1 : 0;
  if (lines.size() <= first) {
    throw CsvParseError("no data rows", 1, 1);
  }

  std::size_t n_cols = split_cells(lines[first]).size();
  if (label_column &&
      (*label_column < 0 || static_cast<std::size_t>(*label_column) >= n_cols)) {
    throw std::invalid_argument("label_column " +
                                std::to_string(*label_column) +
                                " out of range for " + std::to_string(n_cols) +
                                " columns");
  }
  std::size_t n_features = label_column ? n_cols - 1 : n_cols;
  if (n_features == 0) {
    throw CsvParseError("no feature columns", first + 1, 1);
  }

  std::size_t n_rows = lines.size() - first;
  LoadedCsv out;
  out.features.resize(static_cast<Eigen::Index>(n_rows),
                      static_cast<Eigen::Index>(n_features));
  std::vector<long long> raw_labels;
  if (label_column) raw_labels.reserve(n_rows);

  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t file_row = first + r + 1;  // 1-based, counting the header
    std::vector<std::string> cells = split_cells(lines[first + r]);
    if (cells.size() != n_cols) {
      throw CsvParseError("row has " + std::to_string(cells.size()) +
                              " cells, expected " + std::to_string(n_cols),
                          file_row, cells.size());
    }
    Eigen::Index f = 0;
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (label_column && static_cast<std::size_t>(*label_column) == c) {
        raw_labels.push_back(parse_label_cell(cells[c], file_row, c + 1));
      } else {
        out.features(static_cast<Eigen::Index>(r), f++) =
            parse_double_cell(cells[c], file_row, c + 1);
      }
    }
  }

  if (label_column) {
    // Dense re-indexing in ascending label order.
    std::map<long long, int> dense;
    for (long long v : raw_labels) dense.emplace(v, 0);
    int next = 0;
    for (auto& [value, index] : dense) index = next++;
    LabelVector labels(raw_labels.size());
    for (std::size_t i = 0; i < raw_labels.size(); ++i) {
      labels[i] = dense[raw_labels[i]];
    }
    out.labels = std::move(labels);
  }
  return out;
}

void save_csv(const std::string& path, const DataMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      if (c) out << ',';
      out << buf;
    }
    out << '\n';
  }
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

void save_labels(const std::string& path, const LabelVector& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  for (int label : labels) out << label << '\n';
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

LabelVector load_labels(const std::string& path) {
  std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) {
    throw CsvParseError("no labels", 1, 1);
  }
  LabelVector labels;
  labels.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    long long v = parse_label_cell(lines[r], r + 1, 1);
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

}  // namespace spclust
