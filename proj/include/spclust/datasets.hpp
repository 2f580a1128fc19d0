#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spclust/types.hpp"

namespace spclust {

struct Dataset {
  DataMatrix points;
  LabelVector labels;
};

/// Two interleaving half-circles with isotropic Gaussian noise.
///
/// Arc 0 is the upper unit half-circle centered at the origin, arc 1 the
/// reflected half-circle centered at (1, 0.5). n_samples must be even and
/// >= 4; each arc gets n_samples / 2 points equally spaced in arc angle.
/// Pure function of its arguments: the same (n_samples, noise_std, seed)
/// always produces identical output.
Dataset generate_two_moon(int n_samples, double noise_std, std::uint64_t seed);

/// Two Archimedean spiral arms with isotropic Gaussian noise.
///
/// Radius grows linearly with angle over `turns` full rotations and is
/// scaled so the outermost point sits at radius 1. Arm 1 is arm 0 rotated
/// by pi. Arms start at angle pi/2, which keeps their inner endpoints away
/// from the origin and from each other. Same determinism contract as
/// generate_two_moon.
Dataset generate_two_spiral(int n_samples, double turns, double noise_std,
                            std::uint64_t seed);

struct LoadedCsv {
  DataMatrix features;
  std::optional<LabelVector> labels;
};

/// Loads a numeric CSV, one sample per row.
///
/// When label_column (0-based) is given, that column must hold integer
/// values; it is removed from the features and re-indexed to a dense range
/// [0, K) in ascending value order. skip_header drops the first line.
/// Malformed input raises CsvParseError with a 1-based row/column location.
LoadedCsv load_csv(const std::string& path,
                   std::optional<int> label_column = std::nullopt,
                   bool skip_header = false);

// Writes a matrix as CSV with 17 significant digits, so values round-trip
// exactly through load_csv.
void save_csv(const std::string& path, const DataMatrix& m);

// One integer label per line, trailing newline included.
void save_labels(const std::string& path, const LabelVector& labels);
LabelVector load_labels(const std::string& path);

}  // namespace spclust
