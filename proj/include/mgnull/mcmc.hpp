#pragma once

#include <utility>

#include "mgnull/moments.hpp"
#include "mgnull/multigraph.hpp"
#include "mgnull/types.hpp"

namespace mgnull {

struct ChainConfig {
  GraphModel target = GraphModel::uniform;
  Count sample_interval = 0;  // 0: default max(10, m)
  Count sample_count = 1;
  Count burn_in = -1;         // proposals; negative: adaptive default
  std::uint64_t seed = 0;
  int batch_count = 50;       // batches for Monte Carlo standard errors
  bool track_row_inner = false;
};

struct AcceptanceStats {
  Count proposals = 0;
  Count accepted = 0;
  Count rejected = 0;
  Count collisions = 0;  // slot pairs without four distinct nodes
  Count burn_in_proposals = 0;
  Count burn_in_accepted = 0;

  double acceptance_rate() const {
    return proposals > 0 ? static_cast<double>(accepted) / static_cast<double>(proposals) : 0.0;
  }
};

/// Running sums of sampled adjacency statistics, with batch-means bookkeeping
/// for standard errors. Merging accumulators from independent chains is exact
/// as long as they share a batch size.
class MomentAccumulator {
 public:
  MomentAccumulator(Index n, Count batch_size, bool track_row_inner = false);

  void add_sample(const CountMatrix& w);
  void merge(const MomentAccumulator& other);

  Count count() const { return count_; }
  Index size() const { return n_; }
  Count batch_size() const { return batch_size_; }
  Count completed_batches() const { return completed_batches_; }
  bool tracks_row_inner() const { return track_row_inner_; }

  const MatrixXd& sum_w() const { return sum_w_; }
  const MatrixXd& sum_w2() const { return sum_w2_; }
  const MatrixXd& sum_x() const { return sum_x_; }
  const VectorXd& sum_b() const { return sum_b_; }
  double sum_y() const { return sum_y_; }
  const MatrixXd& sum_row_inner() const { return sum_row_inner_; }

  MatrixXd omega_standard_error() const;
  MatrixXd chi_standard_error() const;

  AcceptanceStats stats;

 private:
  MatrixXd batch_standard_error(const MatrixXd& mean_sum, const MatrixXd& mean_sq) const;

  Index n_ = 0;
  Count batch_size_ = 1;
  bool track_row_inner_ = false;
  Count count_ = 0;
  MatrixXd sum_w_, sum_w2_, sum_x_;
  VectorXd sum_b_;
  double sum_y_ = 0.0;
  MatrixXd sum_row_inner_;

  Count batch_fill_ = 0;
  Count completed_batches_ = 0;
  MatrixXd batch_w_, batch_x_;
  MatrixXd batch_w_mean_sum_, batch_w_mean_sq_;
  MatrixXd batch_x_mean_sum_, batch_x_mean_sq_;
};

/// Acceptance probability of a proposed swap of edges with the given
/// multiplicities.
double swap_acceptance(GraphModel target, Count w_ij, Count w_kl);

/// One step of the edge-swap chain on a copy of the state. Two edge slots
/// are drawn uniformly; proposals whose four node indices are not distinct
/// leave the state unchanged but still advance the clock.
std::pair<Multigraph, bool> propose_and_step(const Multigraph& state, GraphModel target, Rng& rng);

/// Runs the chain from g0: burn-in, then one sample every sample_interval
/// proposals. The degree sequence is invariant throughout.
MomentAccumulator run_chain(const Multigraph& g0, const ChainConfig& cfg);

/// Independent chains with derived seeds, merged in chain order. Results do
/// not depend on scheduling.
MomentAccumulator run_chains(const Multigraph& g0, const ChainConfig& cfg, int threads);

/// Sample moments from an accumulator, with batch-means standard errors for
/// omega and chi when at least two full batches completed.
MomentEstimates mc_estimates(const MomentAccumulator& acc);

/// Residual of the configuration-model stationarity identity
///   omega_ij = (d_i d_j - E[w_i . w_j] - E[w_ij^2]) / (2m - d_i - d_j).
/// Exact at the true moments; entries with 2m = d_i + d_j are NaN.
MatrixXd configuration_identity_residual(const MomentEstimates& est, const CountVector& d);
MatrixXd configuration_identity_residual(const MomentAccumulator& acc, const CountVector& d);

}  // namespace mgnull
