#pragma once

#include <optional>
#include <string>

#include "mgnull/types.hpp"

namespace mgnull {

/// Target measure over multigraphs with a fixed degree sequence.
enum class GraphModel { uniform, configuration };

enum class MomentSource { chung_lu, uniform_solver, mcmc, oracle, custom };

std::string to_string(GraphModel model);
std::string to_string(MomentSource source);

/// First and second moments of the random adjacency matrix. omega is always
/// present; the remaining fields are filled when the producing estimator
/// defines them.
struct MomentEstimates {
  MatrixXd omega;                        // expected edge multiplicities
  std::optional<MatrixXd> chi;           // probability of at least one edge
  std::optional<MatrixXd> sigma;         // entrywise standard deviation
  std::optional<MatrixXd> eps_bound;     // diagnostic bound on |chi - kernel|,
                                         // assumes unit regularity constants
  MomentSource source = MomentSource::custom;

  std::optional<VectorXd> collapsed_degrees;  // expected distinct-neighbor counts
  std::optional<double> collapsed_edges;      // expected collapsed edge count
  std::optional<MatrixXd> second_moment;      // E[w_ij^2]
  std::optional<MatrixXd> row_inner;          // E[w_i . w_j]
  std::optional<MatrixXd> omega_se;           // Monte Carlo standard errors
  std::optional<MatrixXd> chi_se;

  Index size() const { return omega.rows(); }
};

}  // namespace mgnull
