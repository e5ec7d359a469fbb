#include <doctest.h>

#include <algorithm>
#include <limits>

#include "mgnull/experiments.hpp"
#include "test_support.hpp"

using namespace mgnull;

TEST_CASE("uniform synthetic sequence") {
  const auto d = synthetic_uniform_sequence(200, 1);
  CHECK(d.size() == 200);
  CHECK(d.minCoeff() >= 2);
  CHECK(d.maxCoeff() <= 102);
  for (Index i = 0; i < d.size(); ++i) CHECK(d[i] % 2 == 0);
  CHECK(d.sum() % 2 == 0);
  CHECK(synthetic_uniform_sequence(200, 1) == d);
  CHECK(synthetic_uniform_sequence(200, 2) != d);
}

TEST_CASE("zipf synthetic sequence") {
  double truncated = 0.0;
  const auto d = synthetic_zipf_sequence(200, 2.0, 1, 1'000'000, &truncated);
  CHECK(d.size() == 200);
  CHECK(truncated > 0.0);
  CHECK(truncated < 1e-5);
  CHECK(d.minCoeff() >= 2);
  for (Index i = 0; i < d.size(); ++i) CHECK(d[i] % 2 == 0);
  CHECK(synthetic_zipf_sequence(200, 2.0, 1) == d);

  // mode of the doubled variable is 2
  const auto big = synthetic_zipf_sequence(5000, 2.0, 3);
  Index twos = 0;
  for (Index i = 0; i < big.size(); ++i) twos += big[i] == 2;
  CHECK(twos > big.size() / 2);

  CHECK_THROWS_AS(synthetic_zipf_sequence(10, 1.0, 1), DataError);
}

TEST_CASE("zipf tails dominate uniform tails across seeds") {
  int heavier = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto zipf = synthetic_zipf_sequence(200, 2.0, seed);
    const auto uniform = synthetic_uniform_sequence(200, seed);
    const auto ratio = [](const CountVector& d) {
      std::vector<Count> sorted(d.data(), d.data() + d.size());
      std::sort(sorted.begin(), sorted.end());
      return static_cast<double>(sorted.back()) /
             static_cast<double>(sorted[sorted.size() / 2]);
    };
    if (ratio(zipf) > ratio(uniform)) ++heavier;
  }
  CHECK(heavier > 90);
}

TEST_CASE("convergence trace on a regular sequence") {
  SolverConfig cfg;
  cfg.tol = std::numeric_limits<double>::epsilon();
  cfg.max_sweeps = 50;
  const auto report = convergence_trace(CountVector::Constant(10, 4), cfg);
  CHECK(report.summary["converged"].get<bool>());
  // settles almost immediately: within plotting accuracy of the closed form
  // by sweep 2, at machine precision within ten
  REQUIRE(report.trace.size() >= 2);
  CHECK(report.trace[1] < 1e-2);
  CHECK(report.summary["sweeps_to_machine_precision"].get<int>() <= 10);
  CHECK(report.summary["sweeps_to_1e-6"].get<int>() <=
        report.summary["sweeps_to_1e-12"].get<int>());
}

TEST_CASE("convergence trace records per-sweep mse monotonically at the tail") {
  SolverConfig cfg;
  cfg.tol = 1e-14;
  const auto report = convergence_trace(synthetic_uniform_sequence(50, 4), cfg);
  REQUIRE(report.trace.size() >= 2);
  CHECK(report.trace.back() <= report.trace.front());
}

TEST_CASE("bootstrap perturbation study") {
  const CountVector d = synthetic_uniform_sequence(40, 5);
  const auto report = bootstrap_u_test(d, 20, 99);
  CHECK(report.summary["trials"].get<int>() == 20);
  CHECK(report.summary["converged_trials"].get<int>() +
            report.summary["nonconverged_trials"].get<int>() ==
        20);
  CHECK(report.summary["max_max_abs_change"].get<double>() <= 1.0);
  CHECK(report.summary["max_mean_abs_change"].get<double>() < 0.1);
  CHECK(report.summary["trials_detail"].size() == 20);

  // the base solution is left untouched: rerunning gives identical output
  const auto again = bootstrap_u_test(d, 20, 99);
  CHECK(again.summary["max_max_abs_change"].get<double>() ==
        report.summary["max_max_abs_change"].get<double>());
}

TEST_CASE("estimator comparison on an enumerable instance") {
  CountVector d(4);
  d << 2, 2, 2, 2;
  const Multigraph g = realize_degree_sequence(d);
  ChainConfig cfg;
  cfg.sample_interval = 20;
  cfg.sample_count = 5000;
  cfg.seed = 55;
  const auto report = estimator_comparison(g, cfg);
  CHECK(report.summary["mean_abs_rel_error_cl"].get<double>() >= 0.0);
  CHECK(report.summary["mean_abs_rel_error_uniform_I"].get<double>() >= 0.0);
  CHECK(report.summary["max_row_sum_gap_uniform_I"].get<double>() < 1e-5);
  CHECK(report.summary["solver_converged"].get<bool>());
}

TEST_CASE("experiment reports write artifacts") {
  test_support::TempDir dir;
  SolverConfig cfg;
  cfg.tol = 1e-14;
  const auto report = convergence_trace(CountVector::Constant(10, 4), cfg, dir.path);
  CHECK(std::filesystem::exists(dir.path / "convergence_trace_seed0.json"));
  CHECK(std::filesystem::exists(dir.path / "convergence_trace_seed0_trace.csv"));
  CHECK(report.summary["converged"].get<bool>());
}
