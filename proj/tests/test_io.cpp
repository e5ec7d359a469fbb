#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "mgnull/io.hpp"
#include "test_support.hpp"

using namespace mgnull;
using test_support::TempDir;
using test_support::write_file;

TEST_CASE("matrix csv round trip") {
  TempDir dir;
  Rng rng(41);
  const Index n = 7;
  MatrixXd m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = (uniform_unit(rng) - 0.5) * 10.0;
  const auto ids = default_node_ids(n);
  const auto path = dir.path / "m.csv";
  write_matrix_csv(path, m, ids);
  std::vector<std::string> read_ids;
  const MatrixXd back = read_matrix_csv(path, &read_ids);
  CHECK(read_ids == ids);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);  // full precision round trip
}

TEST_CASE("matrix json round trip keeps symmetric sparse entries") {
  TempDir dir;
  MatrixXd m = MatrixXd::Zero(4, 4);
  m(0, 1) = m(1, 0) = 2.5;
  m(2, 3) = m(3, 2) = -1.0;
  const auto path = dir.path / "m.json";
  write_matrix_json(path, m, {"a", "b", "c", "d"});
  std::vector<std::string> ids;
  const MatrixXd back = read_matrix_json(path, &ids);
  CHECK(ids == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degree file variants") {
  TempDir dir;
  const auto plain = dir.path / "plain.txt";
  write_file(plain, "4\n2\n6\n");
  const CountVector a = read_degree_file(plain);
  CHECK(a.size() == 3);
  CHECK(a[2] == 6);

  const auto csv = dir.path / "degrees.csv";
  write_file(csv, "node_id,degree\nalpha,4\nbeta,2\n");
  std::vector<std::string> ids;
  const CountVector b = read_degree_file(csv, &ids);
  CHECK(b.size() == 2);
  CHECK(b[0] == 4);
  CHECK(ids == std::vector<std::string>{"alpha", "beta"});

  const auto bad = dir.path / "bad.txt";
  write_file(bad, "4\nx\n");
  CHECK_THROWS_AS(read_degree_file(bad), DataError);
  CHECK_THROWS_AS(read_degree_file(dir.path / "missing.txt"), DataError);
}

TEST_CASE("degree csv writer round trips through the reader") {
  TempDir dir;
  CountVector d(3);
  d << 5, 1, 2;
  const auto path = dir.path / "d.csv";
  write_degree_csv(path, d, {"x", "y", "z"});
  std::vector<std::string> ids;
  CHECK(read_degree_file(path, &ids) == d);
  CHECK(ids == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("partition csv round trip") {
  TempDir dir;
  const auto path = dir.path / "p.csv";
  write_partition_csv(path, {0, 1, 1, 0}, {"a", "b", "c", "d"});
  std::vector<std::string> ids;
  const auto labels = read_partition_csv(path, &ids);
  CHECK(labels == std::vector<int>{0, 1, 1, 0});
  CHECK(ids[3] == "d");
}

TEST_CASE("malformed matrix csv is rejected with location") {
  TempDir dir;
  const auto path = dir.path / "m.csv";
  write_file(path, "a,b\n1,2\n3\n");
  try {
    read_matrix_csv(path);
    FAIL("expected error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("metadata block carries tool and seed") {
  const auto meta = run_metadata("sample", 77);
  CHECK(meta.at("tool") == "mgnull");
  CHECK(meta.at("seed") == 77);
  CHECK(meta.contains("version"));
}
