#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mgnull/beta.hpp"
#include "mgnull/mcmc.hpp"
#include "mgnull/multigraph.hpp"
#include "mgnull/types.hpp"

namespace mgnull {

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  nlohmann::json inputs;
  std::vector<double> trace;  // per-sweep mse when applicable
  nlohmann::json summary;
  std::vector<std::string> artifacts;
};

/// Writes "<name>_seed<seed>.json" and, when a trace is present,
/// "<name>_seed<seed>_trace.csv" into out_dir.
void write_experiment_report(const ExperimentReport& report,
                             const std::filesystem::path& out_dir);

/// n independent copies of 2(u + 1) with u uniform on {0, ..., 50}.
/// Every entry is even, so the sum always is.
CountVector synthetic_uniform_sequence(Index n, std::uint64_t seed);

/// n independent copies of 2z with z Zipf(alpha), sampled by inverse CDF
/// over the support truncated at cap. When truncated_mass is given it
/// receives the estimated probability mass dropped by the truncation.
CountVector synthetic_zipf_sequence(Index n, double alpha, std::uint64_t seed,
                                    Count cap = 1'000'000,
                                    double* truncated_mass = nullptr);

/// Solver run recording the mse after every sweep, with sweep counts to
/// reach 1e-6, 1e-12, and machine precision.
ExperimentReport convergence_trace(const CountVector& d, SolverConfig cfg,
                                   std::optional<std::filesystem::path> out_dir = {});

/// Perturbation study: resolve with d + e_i + e_j for random distinct pairs
/// and record the max and mean absolute change of the solution.
ExperimentReport bootstrap_u_test(const CountVector& d, int trials, std::uint64_t seed,
                                  SolverConfig cfg = {},
                                  std::optional<std::filesystem::path> out_dir = {});

/// Runs all three expected-adjacency estimators on one graph and reports
/// relative errors against the Monte Carlo reference.
ExperimentReport estimator_comparison(const Multigraph& g, ChainConfig mcmc_cfg,
                                      SolverConfig solver_cfg = {}, int threads = 1,
                                      std::optional<std::filesystem::path> out_dir = {});

}  // namespace mgnull
