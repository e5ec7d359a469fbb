#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "mgnull/io.hpp"
#include "test_support.hpp"

using namespace mgnull;
using test_support::TempDir;
using test_support::write_file;

namespace {

std::string binary() {
  const char* bin = std::getenv("MGNULL_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "MGNULL_BIN must point at the CLI binary");
  return bin;
}

int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json doc;
  in >> doc;
  return doc;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run("definitely-not-a-subcommand") == 1);
  CHECK(run("solve-beta") == 1);  // missing required options
  CHECK(run("--help") == 0);
}

TEST_CASE("missing input files exit 2 and name the path") {
  TempDir dir;
  const std::string cmd = binary() + " solve-beta --degrees " + (dir.path / "absent.csv").string() +
                          " --out " + (dir.path / "out").string() + " 2> " +
                          (dir.path / "err.txt").string();
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  std::ifstream err(dir.path / "err.txt");
  std::stringstream buffer;
  buffer << err.rdbuf();
  CHECK(buffer.str().find("absent.csv") != std::string::npos);
}

TEST_CASE("solve-beta on a regular sequence") {
  TempDir dir;
  write_file(dir.path / "d.csv", "4\n4\n4\n4\n4\n4\n4\n4\n4\n4\n");
  const auto out = dir.path / "out";
  CHECK(run("solve-beta --degrees " + (dir.path / "d.csv").string() + " --tol 1e-24 --out " +
            out.string()) == 0);
  std::ifstream beta(out / "beta.csv");
  std::string header;
  std::getline(beta, header);
  CHECK(header == "node_id,degree,beta");
  std::string row;
  std::getline(beta, row);
  const double value = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(std::abs(value - 40.0 / 13.0) < 1e-8);

  const auto meta = read_json(out / "metadata.json");
  CHECK(meta.at("converged").get<bool>());
  CHECK(meta.at("classification") == "well_behaved");
}

TEST_CASE("solve-beta reports non-convergence with exit 3") {
  TempDir dir;
  write_file(dir.path / "star.csv", "5\n1\n1\n1\n1\n1\n");
  const auto out = dir.path / "out";
  CHECK(run("solve-beta --degrees " + (dir.path / "star.csv").string() +
            " --max-sweeps 400 --out " + out.string()) == 3);
  // report written anyway
  const auto meta = read_json(out / "metadata.json");
  CHECK_FALSE(meta.at("converged").get<bool>());
  CHECK(std::filesystem::exists(out / "beta.csv"));
}

TEST_CASE("estimate cl matches the formula") {
  TempDir dir;
  write_file(dir.path / "d.csv", "2\n2\n2\n");
  const auto out = dir.path / "out";
  CHECK(run("estimate --null cl --degrees " + (dir.path / "d.csv").string() + " --out " +
            out.string()) == 0);
  const MatrixXd omega = read_matrix_csv(out / "omega.csv");
  CHECK(omega(0, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(omega(0, 0) == 0.0);
}

TEST_CASE("ingest, sample, estimate, compare pipeline") {
  TempDir dir;
  write_file(dir.path / "edges.txt",
             "# comment line\n"
             "a b 1\n"
             "a b 2\n"
             "b c 3\n"
             "c d 4\n"
             "a d 5\n"
             "b d 6\n");
  const auto ingest_out = dir.path / "ingest";
  CHECK(run("ingest --edges " + (dir.path / "edges.txt").string() + " --out " +
            ingest_out.string()) == 0);
  CHECK(std::filesystem::exists(ingest_out / "adjacency.csv"));
  CHECK(std::filesystem::exists(ingest_out / "adjacency.json"));
  const auto meta = read_json(ingest_out / "metadata.json");
  CHECK(meta.at("n") == 4);
  CHECK(meta.at("m") == 6);

  const auto sample_out = dir.path / "sample";
  CHECK(run("sample --graph " + (ingest_out / "adjacency.csv").string() +
            " --samples 2000 --dt 10 --seed 5 --out " + sample_out.string()) == 0);
  const auto sample_meta = read_json(sample_out / "metadata.json");
  CHECK(sample_meta.at("samples") == 2000);
  CHECK(sample_meta.at("acceptance_rate").get<double>() > 0.0);

  const auto est_out = dir.path / "estimate";
  CHECK(run("estimate --null uniform-I --graph " + (ingest_out / "adjacency.csv").string() +
            " --out " + est_out.string()) == 0);

  const auto cmp_out = dir.path / "compare";
  CHECK(run("compare --estimate " + (est_out / "omega.csv").string() + " --reference " +
            (sample_out / "omega.csv").string() + " --out " + cmp_out.string()) == 0);
  const auto report = read_json(cmp_out / "report.json");
  CHECK(report.at("mean_abs_rel_error").get<double>() >= 0.0);
  CHECK(std::filesystem::exists(report.at("per_entry_csv_path").get<std::string>()));
}

TEST_CASE("msp and modularity on two triangles") {
  TempDir dir;
  write_file(dir.path / "edges.txt", "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
  const auto ingest_out = dir.path / "g";
  REQUIRE(run("ingest --edges " + (dir.path / "edges.txt").string() + " --out " +
              ingest_out.string()) == 0);

  const auto msp_out = dir.path / "msp";
  CHECK(run("msp --graph " + (ingest_out / "adjacency.csv").string() +
            " --null cl --k 2 --restarts 20 --seed 9 --out " + msp_out.string()) == 0);
  const auto report = read_json(msp_out / "partition.json");
  CHECK(report.at("Q").get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(report.at("k_used") == 2);

  const auto mod_out = dir.path / "mod";
  CHECK(run("modularity --graph " + (ingest_out / "adjacency.csv").string() + " --partition " +
            (msp_out / "partition.csv").string() + " --null cl --out " + mod_out.string()) == 0);
  CHECK(read_json(mod_out / "modularity.json").at("Q").get<double>() ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("estimate with the mcmc null samples a chain") {
  TempDir dir;
  write_file(dir.path / "edges.txt", "0 1\n1 2\n0 2\n0 3\n1 3\n2 3\n");
  const auto g_out = dir.path / "g";
  REQUIRE(run("ingest --edges " + (dir.path / "edges.txt").string() + " --out " +
              g_out.string()) == 0);
  const auto out = dir.path / "mc";
  CHECK(run("estimate --null mcmc --graph " + (g_out / "adjacency.csv").string() +
            " --model configuration --samples 500 --dt 5 --seed 2 --out " + out.string()) == 0);
  const MatrixXd omega = read_matrix_csv(out / "omega.csv");
  CHECK(omega.rows() == 4);
  CHECK(read_json(out / "metadata.json").at("null") == "mcmc");
}

TEST_CASE("ingest honors the temporal threshold") {
  TempDir dir;
  std::string edges;
  for (int t = 1; t <= 20; ++t) edges += "a b " + std::to_string(t) + "\n";
  edges += "c d 21\nc d 22\n";
  write_file(dir.path / "edges.txt", edges);
  const auto out = dir.path / "out";
  CHECK(run("ingest --edges " + (dir.path / "edges.txt").string() + " --fraction 0.1 --out " +
            out.string()) == 0);
  const auto meta = read_json(out / "metadata.json");
  CHECK(meta.at("records_kept") == 3);  // ceil(0.1 * 22) = 3: timestamps 20, 21, 22
  CHECK(meta.at("n") == 4);
}

TEST_CASE("enumerate writes exact oracle matrices") {
  TempDir dir;
  write_file(dir.path / "d.csv", "2\n2\n2\n2\n");
  const auto out = dir.path / "out";
  CHECK(run("enumerate --degrees " + (dir.path / "d.csv").string() + " --out " + out.string()) ==
        0);
  const MatrixXd omega = read_matrix_csv(out / "omega_uniform.csv");
  CHECK(omega(0, 1) == doctest::Approx(2.0 / 3.0));
  const auto meta = read_json(out / "metadata.json");
  CHECK(meta.at("graphs") == 6);
}

TEST_CASE("bootstrap-u subcommand") {
  TempDir dir;
  write_file(dir.path / "d.csv", "4\n4\n4\n4\n4\n4\n4\n4\n4\n4\n");
  const auto out = dir.path / "out";
  CHECK(run("bootstrap-u --degrees " + (dir.path / "d.csv").string() +
            " --trials 5 --seed 3 --out " + out.string()) == 0);
  const auto meta = read_json(out / "metadata.json");
  CHECK(meta.at("summary").at("trials") == 5);
  CHECK(std::filesystem::exists(out / "bootstrap_u_test_seed3.json"));
  CHECK(std::filesystem::exists(out / "bootstrap_u_test_seed3_trials.csv"));
}

TEST_CASE("identical invocations are idempotent apart from timestamps") {
  TempDir dir;
  write_file(dir.path / "d.csv", "4\n4\n4\n4\n4\n4\n");
  const auto out_a = dir.path / "a";
  const auto out_b = dir.path / "b";
  REQUIRE(run("solve-beta --degrees " + (dir.path / "d.csv").string() + " --out " +
              out_a.string()) == 0);
  REQUIRE(run("solve-beta --degrees " + (dir.path / "d.csv").string() + " --out " +
              out_b.string()) == 0);
  std::ifstream a(out_a / "beta.csv"), b(out_b / "beta.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}
