#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ptbnn/matrix.hpp"

namespace ptbnn {

// Linear [min,max] -> [0,1] map remembered so predictions can be expressed
// back on the original scale. A constant input degenerates to the midpoint.
struct ScaleRecord {
  double min = 0.0;
  double max = 1.0;
  bool degenerate = false;

  double scale(double v) const {
    return degenerate ? 0.5 : (v - min) / (max - min);
  }
  double unscale(double v) const {
    return degenerate ? min : min + v * (max - min);
  }
};

/// Min-max scale a vector to [0,1]; the returned record inverts the map.
std::vector<double> minmax_scale(std::span<const double> values,
                                 ScaleRecord& record);

/// Min-max scale each column of a matrix in place, one record per column.
std::vector<ScaleRecord> minmax_scale_columns(Matrix& m);

// Lagged reconstruction of a scalar series: row t is the embed_dim values
// preceding the target at t.
struct EmbeddedDataset {
  Matrix X;
  std::vector<double> y;
  std::size_t embed_dim = 0;
  std::size_t lag = 0;
};

/// Delay embedding with dimension D and lag T: emits a row for every 1-based
/// index t with t > D and (t - (D+1)) % T == 0, inputs (y_{t-1},...,y_{t-D}),
/// target y_t.
EmbeddedDataset takens_embed(std::span<const double> series, std::size_t D,
                             std::size_t T);

struct ClassificationDataset {
  Matrix X;
  std::vector<int> labels;
  std::size_t classes = 0;
};

/// Parse comma- or whitespace-delimited numeric text, one record per line.
/// Blank lines and lines starting with '#' are skipped.
Matrix load_csv(const std::string& path);

/// One-hot rows: row i has a single 1 at column labels[i].
Matrix one_hot(const std::vector<int>& labels, std::size_t classes);

/// Chronological split: first floor(fraction * n) rows to train.
std::pair<EmbeddedDataset, EmbeddedDataset> train_test_split(
    const EmbeddedDataset& data, double train_fraction);

/// Seeded shuffled split for classification data.
std::pair<ClassificationDataset, ClassificationDataset> train_test_split(
    const ClassificationDataset& data, double train_fraction,
    std::uint64_t seed);

}  // namespace ptbnn
