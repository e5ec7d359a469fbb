#pragma once

#include <vector>

#include "mgnull/moments.hpp"
#include "mgnull/multigraph.hpp"
#include "mgnull/types.hpp"

namespace mgnull {

/// Exhaustive listing of every loopless multigraph with degree sequence d,
/// together with its stub-matching multiplicity. Ground-truth oracle for
/// tiny instances.
struct EnumeratedEnsemble {
  CountVector d;
  std::vector<CountMatrix> graphs;
  std::vector<Count> config_weights;  // stub matchings mapping to each graph

  std::size_t size() const { return graphs.size(); }
};

/// Enumerates the ensemble for d. Refuses sequences with more than
/// max_edges edges; the stub search is factorial in the edge count.
EnumeratedEnsemble enumerate_ensemble(const CountVector& d, Count max_edges = 8);

/// Exact moments of the chosen measure on an enumerated ensemble. Uniform
/// weights every graph equally; configuration weights by stub multiplicity.
MomentEstimates oracle_moments(const EnumeratedEnsemble& ensemble, GraphModel model);

}  // namespace mgnull
