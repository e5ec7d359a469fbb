#pragma once

#include <utility>
#include <vector>

#include "mgnull/moments.hpp"
#include "mgnull/multigraph.hpp"
#include "mgnull/types.hpp"

namespace mgnull {

/// Observed adjacency minus a null expectation, with the 2m normalizer of
/// the graph it was built from.
struct ModularityMatrix {
  MatrixXd m;
  MomentSource null_source = MomentSource::custom;
  double two_m = 0.0;
};

struct Partition {
  std::vector<int> labels;   // community ids in 0..k-1
  int k = 1;                 // allowed labels; fewer may actually be used
  double q = 0.0;            // modularity under the matrix it was built from
  bool degenerate = false;   // no positive eigenvalues; all-one fallback
};

int labels_used(const std::vector<int>& labels);

ModularityMatrix modularity_matrix(const Multigraph& g, const MomentEstimates& null_estimate);

/// Q = (2m)^-1 sum_ij (w_ij - omega_ij) 1(l_i = l_j). Always in [-1, 1].
double modularity(const Multigraph& g, const MomentEstimates& null_estimate,
                  const std::vector<int>& labels);
double modularity(const ModularityMatrix& matrix, const std::vector<int>& labels);

struct MspConfig {
  int k = 2;
  int restarts = 50;
  std::uint64_t seed = 0;
  int threads = 1;
  int max_passes = 200;  // cap on label-update passes per restart
};

/// Multiway spectral partitioning: embed nodes through the top k-1
/// eigenpairs of the modularity matrix (positive eigenvalues only, scaled by
/// sqrt(lambda)), then greedily grow group sum-vectors from random starts,
/// keeping the best modularity across restarts. Deterministic given the
/// seed; ties go to the lowest group id and earliest restart.
Partition multiway_spectral_partition(const ModularityMatrix& matrix, const MspConfig& cfg);

/// Top eigenpairs by algebraic value, eigenvalues descending. Dense solver
/// up to 2000 nodes, Lanczos beyond.
std::pair<VectorXd, MatrixXd> top_eigenpairs(const MatrixXd& sym, int count);
std::pair<VectorXd, MatrixXd> top_eigenpairs_lanczos(const MatrixXd& sym, int count,
                                                     std::uint64_t seed = 7);

}  // namespace mgnull
