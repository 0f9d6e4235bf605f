#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "ptbnn/data.hpp"
#include "ptbnn/errors.hpp"

using namespace ptbnn;

namespace {

std::mt19937 rng(552211);

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& text) {
    path = std::string("ptbnn_test_") +
           std::to_string(rng()) + ".csv";
    std::ofstream out(path);
    out << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("embedding emits the documented windows") {
  const std::vector<double> series{1, 2, 3, 4, 5, 6, 7};
  const EmbeddedDataset e = takens_embed(series, 2, 1);
  REQUIRE(e.X.rows == 5);
  // first row: inputs (y2, y1), target y3
  CHECK(e.X.at(0, 0) == 2.0);
  CHECK(e.X.at(0, 1) == 1.0);
  CHECK(e.y[0] == 3.0);
  // last row: inputs (y6, y5), target y7
  CHECK(e.X.at(4, 0) == 6.0);
  CHECK(e.X.at(4, 1) == 5.0);
  CHECK(e.y[4] == 7.0);
}

TEST_CASE("embedding respects the lag") {
  const std::vector<double> series{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const EmbeddedDataset e = takens_embed(series, 4, 2);
  REQUIRE(e.X.rows == 3);
  CHECK(e.y == std::vector<double>{5, 7, 9});
  CHECK(e.X.at(1, 0) == 6.0);  // row for t=7: (y6, y5, y4, y3)
  CHECK(e.X.at(1, 3) == 3.0);
}

TEST_CASE("embedding rejects series that admit no rows") {
  const std::vector<double> series{1, 2, 3};
  CHECK_THROWS_AS(takens_embed(series, 3, 1), Error);
  CHECK_THROWS_AS(takens_embed(series, 0, 1), Error);
  CHECK_THROWS_AS(takens_embed(series, 2, 0), Error);
}

TEST_CASE("embedding row count matches brute-force enumeration") {
  std::uniform_int_distribution<std::size_t> len(6, 60), dd(1, 5), tt(1, 4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = len(rng);
    const std::size_t D = dd(rng), T = tt(rng);
    if (n <= D) continue;
    std::vector<double> series(n);
    for (double& v : series) v = u(rng);

    const auto picks = oracle::embed_indices(n, D, T);
    const EmbeddedDataset e = takens_embed(series, D, T);
    REQUIRE(e.X.rows == picks.size());
    for (std::size_t r = 0; r < picks.size(); ++r) {
      const std::size_t t = picks[r];  // 1-based
      CHECK(e.y[r] == series[t - 1]);
      for (std::size_t d = 0; d < D; ++d)
        CHECK(e.X.at(r, d) == series[t - 2 - d]);
    }
  }
}

TEST_CASE("min-max scaling maps to the unit interval and back") {
  ScaleRecord rec;
  const auto scaled = minmax_scale(std::vector<double>{2, 4, 6}, rec);
  CHECK(scaled == std::vector<double>{0.0, 0.5, 1.0});
  CHECK_FALSE(rec.degenerate);

  std::uniform_real_distribution<double> u(-50, 50);
  std::vector<double> values(40);
  for (double& v : values) v = u(rng);
  ScaleRecord rec2;
  const auto s2 = minmax_scale(values, rec2);
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(s2[i] >= 0.0);
    CHECK(s2[i] <= 1.0);
    CHECK(rec2.unscale(s2[i]) == doctest::Approx(values[i]).epsilon(1e-12));
  }
}

TEST_CASE("constant input degenerates to the midpoint") {
  ScaleRecord rec;
  const auto scaled = minmax_scale(std::vector<double>{3, 3, 3}, rec);
  CHECK(rec.degenerate);
  for (double v : scaled) CHECK(v == 0.5);
  CHECK(rec.unscale(0.5) == 3.0);
}

TEST_CASE("chronological split keeps row order") {
  std::vector<double> series(14);
  for (std::size_t i = 0; i < series.size(); ++i)
    series[i] = static_cast<double>(i);
  const EmbeddedDataset e = takens_embed(series, 2, 1);  // 12 rows
  REQUIRE(e.X.rows == 12);

  const auto [train, test] = train_test_split(e, 0.6);
  CHECK(train.X.rows == 7);  // floor(0.6 * 12)
  CHECK(test.X.rows == 5);
  CHECK(train.y.front() == e.y.front());
  CHECK(test.y.back() == e.y.back());
  // all train targets precede all test targets in the source series
  CHECK(train.y.back() < test.y.front());

  const auto [all_train, empty_test] = train_test_split(e, 1.0);
  CHECK(all_train.X.rows == 12);
  CHECK(empty_test.X.rows == 0);
}

TEST_CASE("classification split shuffles deterministically") {
  ClassificationDataset data;
  data.classes = 2;
  data.X = Matrix(10, 1);
  for (std::size_t r = 0; r < 10; ++r) {
    data.X.at(r, 0) = static_cast<double>(r);
    data.labels.push_back(static_cast<int>(r % 2));
  }

  const auto [a_train, a_test] = train_test_split(data, 0.6, 42);
  const auto [b_train, b_test] = train_test_split(data, 0.6, 42);
  CHECK(a_train.X.data == b_train.X.data);
  CHECK(a_test.labels == b_test.labels);
  CHECK(a_train.X.rows == 6);
  CHECK(a_test.X.rows == 4);

  // every source row lands in exactly one side
  std::vector<int> seen(10, 0);
  for (std::size_t r = 0; r < a_train.X.rows; ++r)
    seen[static_cast<std::size_t>(a_train.X.at(r, 0))] += 1;
  for (std::size_t r = 0; r < a_test.X.rows; ++r)
    seen[static_cast<std::size_t>(a_test.X.at(r, 0))] += 1;
  for (int count : seen) CHECK(count == 1);

  const auto [c_train, c_test] = train_test_split(data, 0.6, 43);
  CHECK(c_train.X.data != a_train.X.data);  // different seed, different split
}

TEST_CASE("csv loader reads comma and whitespace fields") {
  TempFile file("1,2,3,4,5\n6 7 8 9 10\n0.5,-1e3,2.5,0,1\n");
  const Matrix m = load_csv(file.path);
  CHECK(m.rows == 3);
  CHECK(m.cols == 5);
  CHECK(m.at(1, 2) == 8.0);
  CHECK(m.at(2, 1) == -1000.0);
}

TEST_CASE("csv loader skips blanks and comments") {
  TempFile file("# header comment\n1,2\n\n3,4\n");
  const Matrix m = load_csv(file.path);
  CHECK(m.rows == 2);
  CHECK(m.cols == 2);
}

TEST_CASE("csv loader names the offending line") {
  TempFile bad_cell("1,2\n3,oops\n");
  CHECK_THROWS_WITH_AS(load_csv(bad_cell.path),
                       doctest::Contains("line 2"), Error);

  TempFile ragged("1,2\n1,2,3\n");
  CHECK_THROWS_WITH_AS(load_csv(ragged.path),
                       doctest::Contains("line 2"), Error);

  TempFile empty("");
  CHECK_THROWS_AS(load_csv(empty.path), Error);
  CHECK_THROWS_AS(load_csv("does_not_exist.csv"), Error);
}

TEST_CASE("one-hot encoding partitions each row") {
  const Matrix m = one_hot({0, 2}, 3);
  CHECK(m.rows == 2);
  CHECK(m.cols == 3);
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 0.0);
  CHECK(m.at(1, 2) == 1.0);

  const Matrix two = one_hot({1, 1}, 2);
  CHECK(two.at(0, 0) == 0.0);
  CHECK(two.at(0, 1) == 1.0);
  CHECK(two.at(1, 1) == 1.0);

  std::uniform_int_distribution<int> ldist(0, 4);
  std::vector<int> labels(20);
  for (int& l : labels) l = ldist(rng);
  const Matrix big = one_hot(labels, 5);
  for (std::size_t r = 0; r < big.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < big.cols; ++c) sum += big.at(r, c);
    CHECK(sum == 1.0);
  }

  CHECK_THROWS_AS(one_hot({0, 5}, 3), Error);
}

TEST_CASE("column scaling keeps every value in range") {
  Matrix m(6, 3);
  std::uniform_real_distribution<double> u(-100, 100);
  for (double& v : m.data) v = u(rng);
  const auto records = minmax_scale_columns(m);
  REQUIRE(records.size() == 3);
  for (double v : m.data) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}
