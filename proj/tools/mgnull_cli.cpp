// Command-line surface for the mgnull library. Every subcommand writes a
// metadata.json with the tool version, seed, and parameters next to its
// outputs.
//
// Exit codes: 0 success, 1 usage error, 2 data error,
//             3 numeric non-convergence (outputs still written).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "mgnull/beta.hpp"
#include "mgnull/edge_list.hpp"
#include "mgnull/enumerate.hpp"
#include "mgnull/estimators.hpp"
#include "mgnull/experiments.hpp"
#include "mgnull/io.hpp"
#include "mgnull/mcmc.hpp"
#include "mgnull/modularity.hpp"
#include "mgnull/multigraph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mgnull;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

struct GraphInput {
  std::string graph_path;
  std::string edges_path;
  std::string degrees_path;
  double fraction = 1.0;
  bool skip_self_loops = false;
};

void add_graph_options(CLI::App* cmd, GraphInput& input, bool allow_degrees) {
  cmd->add_option("--graph", input.graph_path, "adjacency matrix CSV");
  cmd->add_option("--edges", input.edges_path, "edge list file (u v [t] per line)");
  if (allow_degrees)
    cmd->add_option("--degrees", input.degrees_path,
                    "degree file; the chain starts from a deterministic realization");
  cmd->add_option("--fraction", input.fraction,
                  "keep only the last fraction of interactions by timestamp");
  cmd->add_flag("--skip-self-loops", input.skip_self_loops, "drop self-loop records");
}

Multigraph load_graph(const GraphInput& input, std::vector<std::string>& ids) {
  if (!input.graph_path.empty()) {
    const MatrixXd m = read_matrix_csv(input.graph_path, &ids);
    CountMatrix w(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        const double v = m(i, j);
        if (v != std::round(v)) throw DataError("adjacency entries must be integers");
        w(i, j) = static_cast<Count>(std::llround(v));
      }
    return Multigraph(std::move(w));
  }
  if (!input.edges_path.empty()) {
    auto records = read_edge_list_file(input.edges_path);
    if (input.fraction < 1.0) records = temporal_threshold(std::move(records), input.fraction);
    auto result = from_edge_list(records, {input.skip_self_loops});
    ids = result.node_ids;
    return std::move(result.graph);
  }
  if (!input.degrees_path.empty()) {
    const CountVector d = read_degree_file(input.degrees_path, &ids);
    return realize_degree_sequence(d);
  }
  throw DataError("no graph input given; use --graph, --edges, or --degrees");
}

GraphModel parse_model(const std::string& name) {
  if (name == "uniform") return GraphModel::uniform;
  if (name == "configuration") return GraphModel::configuration;
  throw DataError("unknown model '" + name + "'");
}

void write_moments(const fs::path& out, const MomentEstimates& est,
                   const std::vector<std::string>& ids, json& meta) {
  write_matrix_csv(out / "omega.csv", est.omega, ids);
  meta["files"]["omega"] = (out / "omega.csv").string();
  if (est.chi) {
    write_matrix_csv(out / "chi.csv", *est.chi, ids);
    meta["files"]["chi"] = (out / "chi.csv").string();
  }
  if (est.sigma) {
    write_matrix_csv(out / "sigma.csv", *est.sigma, ids);
    meta["files"]["sigma"] = (out / "sigma.csv").string();
  }
  if (est.eps_bound) {
    write_matrix_csv(out / "eps.csv", *est.eps_bound, ids);
    meta["files"]["eps"] = (out / "eps.csv").string();
    meta["eps_note"] = "bound assumes unit regularity constants (conjectural)";
  }
  if (est.omega_se) {
    write_matrix_csv(out / "omega_se.csv", *est.omega_se, ids);
    meta["files"]["omega_se"] = (out / "omega_se.csv").string();
  }
}

json solver_metadata(const BetaEstimate& estimate) {
  return {{"iterations", estimate.sweeps},
          {"final_mse", estimate.final_mse},
          {"final_scaled_residual", estimate.final_scaled_residual},
          {"converged", estimate.converged},
          {"classification", to_string(estimate.classification)},
          {"delta", estimate.delta},
          {"psi", estimate.psi}};
}

MomentEstimates null_from_flags(const std::string& null_name, const Multigraph& g,
                                const std::string& null_omega_path, const SolverConfig& solver_cfg,
                                bool* solver_converged) {
  if (null_name == "cl") return chung_lu_expectation(g.degrees());
  if (null_name == "uniform-I") {
    const BetaEstimate beta = estimate_collapsed_degrees(g.degrees(), solver_cfg);
    if (solver_converged) *solver_converged = beta.converged;
    return uniform_adjacency_expectation(beta);
  }
  if (null_name == "mcmc" || null_name == "custom") {
    if (null_omega_path.empty())
      throw DataError("--null " + null_name + " requires --null-omega FILE");
    MomentEstimates est;
    est.omega = read_matrix_csv(null_omega_path);
    est.source = null_name == "mcmc" ? MomentSource::mcmc : MomentSource::custom;
    return est;
  }
  throw DataError("unknown null '" + null_name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expected adjacency of random multigraphs with fixed degree sequences"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- ingest ----------------------------------------------------------
  auto* ingest = app.add_subcommand("ingest", "edge list to graph and degree files");
  auto ingest_in = std::make_shared<GraphInput>();
  auto ingest_out = std::make_shared<std::string>();
  ingest->add_option("--edges", ingest_in->edges_path, "edge list file")->required();
  ingest->add_option("--fraction", ingest_in->fraction, "temporal threshold fraction");
  ingest->add_flag("--skip-self-loops", ingest_in->skip_self_loops, "drop self-loop records");
  ingest->add_option("--out", *ingest_out, "output directory")->required();
  ingest->callback([ingest_in, ingest_out] {
    const fs::path out{*ingest_out};
    auto records = read_edge_list_file(ingest_in->edges_path);
    const std::size_t total_records = records.size();
    if (ingest_in->fraction < 1.0)
      records = temporal_threshold(std::move(records), ingest_in->fraction);
    auto result = from_edge_list(records, {ingest_in->skip_self_loops});
    const auto& g = result.graph;
    write_matrix_csv(out / "adjacency.csv", g.adjacency().cast<double>(), result.node_ids);
    write_matrix_json(out / "adjacency.json", g.adjacency().cast<double>(), result.node_ids);
    write_degree_csv(out / "degrees.csv", g.degrees(), result.node_ids);
    json meta = run_metadata("ingest", 0);
    meta["n"] = g.node_count();
    meta["m"] = g.edge_count();
    meta["records_total"] = total_records;
    meta["records_kept"] = records.size();
    meta["fraction"] = ingest_in->fraction;
    meta["skipped_self_loops"] = result.skipped_self_loops;
    write_json(out / "metadata.json", meta);
  });

  // ---- sample ----------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "edge-swap Markov chain moment estimates");
  auto sample_in = std::make_shared<GraphInput>();
  struct SampleOpts {
    std::string out;
    std::string model = "uniform";
    ChainConfig cfg;
    int threads = 1;
  };
  auto sample_opts = std::make_shared<SampleOpts>();
  add_graph_options(sample, *sample_in, true);
  sample->add_option("--model", sample_opts->model, "uniform or configuration");
  sample->add_option("--dt", sample_opts->cfg.sample_interval, "steps between samples");
  sample->add_option("--samples", sample_opts->cfg.sample_count, "number of samples")
      ->default_val(10'000);
  sample->add_option("--burn-in", sample_opts->cfg.burn_in,
                     "burn-in proposals (default: until 10m accepted swaps)");
  sample->add_option("--seed", sample_opts->cfg.seed, "rng seed")->default_val(kDefaultSeed);
  sample->add_option("--batches", sample_opts->cfg.batch_count, "batch count for standard errors");
  sample->add_flag("--track-inner", sample_opts->cfg.track_row_inner,
                   "accumulate row inner products (quadratic cost per sample)");
  sample->add_option("--threads", sample_opts->threads, "parallel chains");
  sample->add_option("--out", sample_opts->out, "output directory")->required();
  sample->callback([sample_in, sample_opts] {
    const fs::path out{sample_opts->out};
    std::vector<std::string> ids;
    const Multigraph g = load_graph(*sample_in, ids);
    if (ids.empty()) ids = default_node_ids(g.node_count());
    ChainConfig cfg = sample_opts->cfg;
    cfg.target = parse_model(sample_opts->model);
    const MomentAccumulator acc = run_chains(g, cfg, sample_opts->threads);
    const MomentEstimates est = mc_estimates(acc);
    json meta = run_metadata("sample", cfg.seed);
    write_moments(out, est, ids, meta);
    if (est.chi_se) write_matrix_csv(out / "chi_se.csv", *est.chi_se, ids);
    if (est.row_inner) write_matrix_csv(out / "row_inner.csv", *est.row_inner, ids);
    write_vector_csv(out / "collapsed_degrees.csv", "collapsed_degree", *est.collapsed_degrees,
                     ids);
    meta["model"] = sample_opts->model;
    meta["samples"] = cfg.sample_count;
    meta["dt"] = cfg.sample_interval > 0 ? cfg.sample_interval
                                         : std::max<Count>(10, g.edge_count());
    meta["burn_in_proposals"] = acc.stats.burn_in_proposals;
    meta["burn_in_accepted"] = acc.stats.burn_in_accepted;
    meta["proposals"] = acc.stats.proposals;
    meta["accepted"] = acc.stats.accepted;
    meta["rejected"] = acc.stats.rejected;
    meta["collisions"] = acc.stats.collisions;
    meta["acceptance_rate"] = acc.stats.acceptance_rate();
    meta["batch_size"] = acc.batch_size();
    meta["completed_batches"] = acc.completed_batches();
    meta["threads"] = sample_opts->threads;
    meta["collapsed_edges"] = *est.collapsed_edges;
    write_json(out / "metadata.json", meta);
  });

  // ---- solve-beta ------------------------------------------------------
  auto* solve = app.add_subcommand("solve-beta", "coordinate-sweep solution of the degree system");
  struct SolveOpts {
    std::string degrees, out;
    SolverConfig cfg;
  };
  auto solve_opts = std::make_shared<SolveOpts>();
  solve->add_option("--degrees", solve_opts->degrees, "degree file")->required();
  solve->add_option("--tol", solve_opts->cfg.tol, "mse stopping tolerance");
  solve->add_option("--max-sweeps", solve_opts->cfg.max_sweeps, "sweep cap");
  solve->add_option("--delta", solve_opts->cfg.classification_delta, "well-behavedness margin");
  solve->add_option("--out", solve_opts->out, "output directory")->required();
  solve->callback([solve_opts, &exit_code] {
    const fs::path out{solve_opts->out};
    std::vector<std::string> ids;
    const CountVector d = read_degree_file(solve_opts->degrees, &ids);
    const BetaEstimate estimate = estimate_collapsed_degrees(d, solve_opts->cfg);
    write_beta_csv(out / "beta.csv", d, estimate.beta, ids);
    json meta = run_metadata("solve-beta", 0);
    meta.update(solver_metadata(estimate));
    meta["tol"] = solve_opts->cfg.tol;
    meta["max_sweeps"] = solve_opts->cfg.max_sweeps;
    meta["mse_trace"] = estimate.mse_trace;
    write_json(out / "metadata.json", meta);
    if (!estimate.converged) {
      std::cerr << "solve-beta: did not converge after " << estimate.sweeps
                << " sweeps (final mse " << estimate.final_mse << ")\n";
      exit_code = 3;
    }
  });

  // ---- estimate --------------------------------------------------------
  auto* estimate_cmd = app.add_subcommand("estimate", "expected adjacency under a chosen null");
  struct EstimateOpts {
    GraphInput input;
    std::string out;
    std::string null_name = "cl";
    std::string model = "uniform";
    SolverConfig solver_cfg;
    ChainConfig chain_cfg;
    int threads = 1;
  };
  auto est_opts = std::make_shared<EstimateOpts>();
  add_graph_options(estimate_cmd, est_opts->input, true);
  estimate_cmd->add_option("--null", est_opts->null_name, "cl, uniform-I, or mcmc");
  estimate_cmd->add_option("--model", est_opts->model, "chain target for --null mcmc");
  estimate_cmd->add_option("--tol", est_opts->solver_cfg.tol, "solver tolerance");
  estimate_cmd->add_option("--max-sweeps", est_opts->solver_cfg.max_sweeps, "solver sweep cap");
  estimate_cmd->add_option("--dt", est_opts->chain_cfg.sample_interval, "steps between samples");
  estimate_cmd->add_option("--samples", est_opts->chain_cfg.sample_count, "number of samples")
      ->default_val(10'000);
  estimate_cmd->add_option("--burn-in", est_opts->chain_cfg.burn_in, "burn-in proposals");
  estimate_cmd->add_option("--seed", est_opts->chain_cfg.seed, "rng seed")
      ->default_val(kDefaultSeed);
  estimate_cmd->add_option("--threads", est_opts->threads, "parallel chains");
  estimate_cmd->add_option("--out", est_opts->out, "output directory")->required();
  estimate_cmd->callback([est_opts, &exit_code] {
    const fs::path out{est_opts->out};
    std::vector<std::string> ids;
    json meta = run_metadata("estimate", est_opts->chain_cfg.seed);
    meta["null"] = est_opts->null_name;
    if (est_opts->null_name == "cl") {
      CountVector d;
      if (!est_opts->input.degrees_path.empty()) {
        d = read_degree_file(est_opts->input.degrees_path, &ids);
      } else {
        const Multigraph g = load_graph(est_opts->input, ids);
        d = g.degrees();
      }
      if (ids.empty()) ids = default_node_ids(d.size());
      write_moments(out, chung_lu_expectation(d), ids, meta);
    } else if (est_opts->null_name == "uniform-I") {
      CountVector d;
      if (!est_opts->input.degrees_path.empty()) {
        d = read_degree_file(est_opts->input.degrees_path, &ids);
      } else {
        const Multigraph g = load_graph(est_opts->input, ids);
        d = g.degrees();
      }
      if (ids.empty()) ids = default_node_ids(d.size());
      const BetaEstimate beta = estimate_collapsed_degrees(d, est_opts->solver_cfg);
      write_moments(out, uniform_adjacency_expectation(beta), ids, meta);
      write_beta_csv(out / "beta.csv", d, beta.beta, ids);
      meta["solver"] = solver_metadata(beta);
      if (!beta.converged) exit_code = 3;
    } else if (est_opts->null_name == "mcmc") {
      const Multigraph g = load_graph(est_opts->input, ids);
      if (ids.empty()) ids = default_node_ids(g.node_count());
      ChainConfig cfg = est_opts->chain_cfg;
      cfg.target = parse_model(est_opts->model);
      const MomentAccumulator acc = run_chains(g, cfg, est_opts->threads);
      write_moments(out, mc_estimates(acc), ids, meta);
      meta["model"] = est_opts->model;
      meta["acceptance_rate"] = acc.stats.acceptance_rate();
    } else {
      throw DataError("unknown null '" + est_opts->null_name + "'");
    }
    write_json(out / "metadata.json", meta);
  });

  // ---- compare ---------------------------------------------------------
  auto* compare = app.add_subcommand("compare", "entrywise relative error report");
  struct CompareOpts {
    std::string estimate, reference, out;
  };
  auto cmp_opts = std::make_shared<CompareOpts>();
  compare->add_option("--estimate", cmp_opts->estimate, "estimate matrix CSV")->required();
  compare->add_option("--reference", cmp_opts->reference, "reference matrix CSV")->required();
  compare->add_option("--out", cmp_opts->out, "output directory")->required();
  compare->callback([cmp_opts] {
    const fs::path out{cmp_opts->out};
    std::vector<std::string> ids;
    const MatrixXd est = read_matrix_csv(cmp_opts->estimate, &ids);
    const MatrixXd ref = read_matrix_csv(cmp_opts->reference);
    const RelativeErrorReport report = relative_error(est, ref);
    const auto per_entry = out / "rel_error.csv";
    write_matrix_csv(per_entry, report.entrywise, ids);
    json meta = run_metadata("compare", 0);
    meta["mean_abs_rel_error"] = report.mean_abs;
    meta["excluded_pairs"] = report.excluded;
    meta["included_pairs"] = report.included;
    meta["per_entry_csv_path"] = per_entry.string();
    write_json(out / "report.json", meta);
  });

  // ---- bootstrap-u -----------------------------------------------------
  auto* bootstrap = app.add_subcommand("bootstrap-u", "degree-increment sensitivity study");
  struct BootstrapOpts {
    std::string degrees, out;
    int trials = 100;
    std::uint64_t seed = kDefaultSeed;
    SolverConfig cfg;
  };
  auto boot_opts = std::make_shared<BootstrapOpts>();
  bootstrap->add_option("--degrees", boot_opts->degrees, "degree file")->required();
  bootstrap->add_option("--trials", boot_opts->trials, "number of perturbed solves");
  bootstrap->add_option("--seed", boot_opts->seed, "rng seed");
  bootstrap->add_option("--tol", boot_opts->cfg.tol, "solver tolerance");
  bootstrap->add_option("--max-sweeps", boot_opts->cfg.max_sweeps, "solver sweep cap");
  bootstrap->add_option("--out", boot_opts->out, "output directory")->required();
  bootstrap->callback([boot_opts] {
    const fs::path out{boot_opts->out};
    const CountVector d = read_degree_file(boot_opts->degrees);
    const ExperimentReport report =
        bootstrap_u_test(d, boot_opts->trials, boot_opts->seed, boot_opts->cfg, out);
    json meta = run_metadata("bootstrap-u", boot_opts->seed);
    meta["summary"] = report.summary;
    meta["summary"].erase("trials_detail");
    write_json(out / "metadata.json", meta);
  });

  // ---- modularity ------------------------------------------------------
  auto* modularity_cmd = app.add_subcommand("modularity", "modularity of a given partition");
  struct ModularityOpts {
    GraphInput input;
    std::string partition, out;
    std::string null_name = "cl";
    std::string null_omega;
    SolverConfig solver_cfg;
  };
  auto mod_opts = std::make_shared<ModularityOpts>();
  add_graph_options(modularity_cmd, mod_opts->input, false);
  modularity_cmd->add_option("--partition", mod_opts->partition, "partition CSV")->required();
  modularity_cmd->add_option("--null", mod_opts->null_name, "cl, uniform-I, mcmc, or custom");
  modularity_cmd->add_option("--null-omega", mod_opts->null_omega,
                             "omega matrix CSV for mcmc/custom nulls");
  modularity_cmd->add_option("--tol", mod_opts->solver_cfg.tol, "solver tolerance");
  modularity_cmd->add_option("--out", mod_opts->out, "output directory")->required();
  modularity_cmd->callback([mod_opts, &exit_code] {
    const fs::path out{mod_opts->out};
    std::vector<std::string> ids;
    const Multigraph g = load_graph(mod_opts->input, ids);
    const std::vector<int> labels = read_partition_csv(mod_opts->partition);
    bool solver_converged = true;
    const MomentEstimates null_est = null_from_flags(
        mod_opts->null_name, g, mod_opts->null_omega, mod_opts->solver_cfg, &solver_converged);
    const double q = modularity(g, null_est, labels);
    json meta = run_metadata("modularity", 0);
    meta["Q"] = q;
    meta["null_source"] = to_string(null_est.source);
    meta["k_used"] = labels_used(labels);
    meta["n"] = g.node_count();
    meta["m"] = g.edge_count();
    write_json(out / "modularity.json", meta);
    if (!solver_converged) exit_code = 3;
  });

  // ---- msp -------------------------------------------------------------
  auto* msp = app.add_subcommand("msp", "multiway spectral partition search");
  struct MspOpts {
    GraphInput input;
    std::string out;
    std::string null_name = "cl";
    std::string null_omega;
    SolverConfig solver_cfg;
    MspConfig cfg;
  };
  auto msp_opts = std::make_shared<MspOpts>();
  add_graph_options(msp, msp_opts->input, false);
  msp->add_option("--null", msp_opts->null_name, "cl, uniform-I, mcmc, or custom");
  msp->add_option("--null-omega", msp_opts->null_omega, "omega matrix CSV for mcmc/custom nulls");
  msp->add_option("--k", msp_opts->cfg.k, "number of communities")->required();
  msp->add_option("--restarts", msp_opts->cfg.restarts, "random restarts");
  msp->add_option("--seed", msp_opts->cfg.seed, "rng seed")->default_val(kDefaultSeed);
  msp->add_option("--threads", msp_opts->cfg.threads, "parallel restarts");
  msp->add_option("--tol", msp_opts->solver_cfg.tol, "solver tolerance");
  msp->add_option("--out", msp_opts->out, "output directory")->required();
  msp->callback([msp_opts, &exit_code] {
    const fs::path out{msp_opts->out};
    std::vector<std::string> ids;
    const Multigraph g = load_graph(msp_opts->input, ids);
    if (ids.empty()) ids = default_node_ids(g.node_count());
    bool solver_converged = true;
    const MomentEstimates null_est = null_from_flags(
        msp_opts->null_name, g, msp_opts->null_omega, msp_opts->solver_cfg, &solver_converged);
    const ModularityMatrix matrix = modularity_matrix(g, null_est);
    const Partition partition = multiway_spectral_partition(matrix, msp_opts->cfg);
    write_partition_csv(out / "partition.csv", partition.labels, ids);
    json meta = run_metadata("msp", msp_opts->cfg.seed);
    meta["Q"] = partition.q;
    meta["k_requested"] = msp_opts->cfg.k;
    meta["k_used"] = labels_used(partition.labels);
    meta["null_source"] = to_string(null_est.source);
    meta["restarts"] = msp_opts->cfg.restarts;
    meta["degenerate"] = partition.degenerate;
    if (partition.degenerate)
      std::cerr << "msp: no positive eigenvalues; returning the all-one partition\n";
    write_json(out / "partition.json", meta);
    if (!solver_converged) exit_code = 3;
  });

  // ---- enumerate -------------------------------------------------------
  auto* enumerate_cmd = app.add_subcommand("enumerate", "exact oracle for tiny degree sequences");
  struct EnumerateOpts {
    std::string degrees, out;
    std::string model = "both";
    Count max_edges = 8;
  };
  auto enum_opts = std::make_shared<EnumerateOpts>();
  enumerate_cmd->add_option("--degrees", enum_opts->degrees, "degree file")->required();
  enumerate_cmd->add_option("--model", enum_opts->model, "uniform, configuration, or both");
  enumerate_cmd->add_option("--max-edges", enum_opts->max_edges, "enumeration cap");
  enumerate_cmd->add_option("--out", enum_opts->out, "output directory")->required();
  enumerate_cmd->callback([enum_opts] {
    const fs::path out{enum_opts->out};
    std::vector<std::string> ids;
    const CountVector d = read_degree_file(enum_opts->degrees, &ids);
    if (ids.empty()) ids = default_node_ids(d.size());
    const EnumeratedEnsemble ensemble = enumerate_ensemble(d, enum_opts->max_edges);
    json meta = run_metadata("enumerate", 0);
    meta["graphs"] = ensemble.size();
    meta["config_weights"] = ensemble.config_weights;
    const auto emit = [&](GraphModel model) {
      const MomentEstimates est = oracle_moments(ensemble, model);
      const std::string tag = to_string(model);
      write_matrix_csv(out / ("omega_" + tag + ".csv"), est.omega, ids);
      write_matrix_csv(out / ("chi_" + tag + ".csv"), *est.chi, ids);
      write_matrix_csv(out / ("sigma_" + tag + ".csv"), *est.sigma, ids);
    };
    if (enum_opts->model == "uniform" || enum_opts->model == "both") emit(GraphModel::uniform);
    if (enum_opts->model == "configuration" || enum_opts->model == "both")
      emit(GraphModel::configuration);
    if (enum_opts->model != "uniform" && enum_opts->model != "configuration" &&
        enum_opts->model != "both")
      throw DataError("unknown model '" + enum_opts->model + "'");
    write_json(out / "metadata.json", meta);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
