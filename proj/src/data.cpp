#include "ptbnn/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ptbnn/errors.hpp"
#include "ptbnn/rng.hpp"

namespace ptbnn {

std::vector<double> minmax_scale(std::span<const double> values,
                                 ScaleRecord& record) {
  if (values.empty()) throw Error("data", "cannot scale an empty vector");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  record.min = *lo;
  record.max = *hi;
  record.degenerate = (*lo == *hi);
  std::vector<double> scaled(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    scaled[i] = record.scale(values[i]);
  return scaled;
}

std::vector<ScaleRecord> minmax_scale_columns(Matrix& m) {
  std::vector<ScaleRecord> records(m.cols);
  if (m.rows == 0) throw Error("data", "cannot scale an empty matrix");
  for (std::size_t c = 0; c < m.cols; ++c) {
    double lo = m.at(0, c), hi = m.at(0, c);
    for (std::size_t r = 1; r < m.rows; ++r) {
      lo = std::min(lo, m.at(r, c));
      hi = std::max(hi, m.at(r, c));
    }
    records[c] = {lo, hi, lo == hi};
    for (std::size_t r = 0; r < m.rows; ++r)
      m.at(r, c) = records[c].scale(m.at(r, c));
  }
  return records;
}

EmbeddedDataset takens_embed(std::span<const double> series, std::size_t D,
                             std::size_t T) {
  if (D < 1 || T < 1) throw Error("data", "embedding needs D >= 1 and T >= 1");
  if (series.size() <= D)
    throw Error("data", "series of length " + std::to_string(series.size()) +
                            " too short for embedding dimension " +
                            std::to_string(D));

  // admissible 1-based indices: t > D and (t - (D+1)) % T == 0
  std::vector<std::size_t> picks;
  for (std::size_t t = D + 1; t <= series.size(); t += T) picks.push_back(t);
  if (picks.empty()) throw Error("data", "embedding admits no rows");

  EmbeddedDataset out;
  out.embed_dim = D;
  out.lag = T;
  out.X = Matrix(picks.size(), D);
  out.y.resize(picks.size());
  for (std::size_t r = 0; r < picks.size(); ++r) {
    const std::size_t t = picks[r];  // 1-based
    for (std::size_t d = 0; d < D; ++d)
      out.X.at(r, d) = series[t - 1 - (d + 1)];  // y_{t-1}, ..., y_{t-D}
    out.y[r] = series[t - 1];
  }
  return out;
}

Matrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("data", "cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // normalize commas to spaces, then stream-extract doubles
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> row;
    std::string cell;
    while (fields >> cell) {
      if (row.empty() && cell[0] == '#') break;  // comment line
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size())
        throw Error("data", path + " line " + std::to_string(line_no) +
                                ": non-numeric cell '" + cell + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;  // blank or comment line
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error("data", path + " line " + std::to_string(line_no) + ": has " +
                              std::to_string(row.size()) + " columns, expected " +
                              std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("data", path + " holds no data rows");

  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

Matrix one_hot(const std::vector<int>& labels, std::size_t classes) {
  if (classes < 2) throw Error("data", "one-hot needs at least two classes");
  Matrix m(labels.size(), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= classes)
      throw Error("data", "label " + std::to_string(labels[i]) +
                              " outside 0.." + std::to_string(classes - 1));
    m.at(i, static_cast<std::size_t>(labels[i])) = 1.0;
  }
  return m;
}

namespace {

std::size_t train_rows(std::size_t n, double fraction) {
  if (fraction < 0.0 || fraction > 1.0)
    throw Error("config", "train fraction must lie in [0,1]");
  return static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n)));
}

}  // namespace

std::pair<EmbeddedDataset, EmbeddedDataset> train_test_split(
    const EmbeddedDataset& data, double train_fraction) {
  const std::size_t n_train = train_rows(data.X.rows, train_fraction);
  EmbeddedDataset train, test;
  train.embed_dim = test.embed_dim = data.embed_dim;
  train.lag = test.lag = data.lag;
  train.X = Matrix(n_train, data.X.cols);
  test.X = Matrix(data.X.rows - n_train, data.X.cols);
  for (std::size_t r = 0; r < data.X.rows; ++r) {
    Matrix& dst = r < n_train ? train.X : test.X;
    const std::size_t dr = r < n_train ? r : r - n_train;
    for (std::size_t c = 0; c < data.X.cols; ++c)
      dst.at(dr, c) = data.X.at(r, c);
    (r < n_train ? train.y : test.y).push_back(data.y[r]);
  }
  return {std::move(train), std::move(test)};
}

std::pair<ClassificationDataset, ClassificationDataset> train_test_split(
    const ClassificationDataset& data, double train_fraction,
    std::uint64_t seed) {
  const std::size_t n = data.X.rows;
  const std::size_t n_train = train_rows(n, train_fraction);

  // Fisher-Yates on the index vector, driven by our own stream so splits are
  // reproducible across standard libraries.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  RngStream rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(order[i - 1], order[std::min(j, i - 1)]);
  }

  ClassificationDataset train, test;
  train.classes = test.classes = data.classes;
  train.X = Matrix(n_train, data.X.cols);
  test.X = Matrix(n - n_train, data.X.cols);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t src = order[r];
    ClassificationDataset& dst = r < n_train ? train : test;
    const std::size_t dr = r < n_train ? r : r - n_train;
    for (std::size_t c = 0; c < data.X.cols; ++c)
      dst.X.at(dr, c) = data.X.at(src, c);
    dst.labels.push_back(data.labels[src]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace ptbnn
