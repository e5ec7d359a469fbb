#pragma once

#include <utility>
#include <vector>

#include "mgnull/types.hpp"

namespace mgnull {

/// Undirected multigraph without self-loops, stored both as a symmetric
/// integer adjacency matrix and as a flat list of edge slots (one slot per
/// parallel edge). Immutable after construction.
class Multigraph {
 public:
  using Edge = std::pair<Index, Index>;  // canonical order: first < second

  explicit Multigraph(CountMatrix adjacency);
  static Multigraph from_edges(Index node_count, const std::vector<Edge>& edges);

  Index node_count() const { return adjacency_.rows(); }
  Count edge_count() const { return static_cast<Count>(edge_slots_.size()); }
  const CountMatrix& adjacency() const { return adjacency_; }
  const std::vector<Edge>& edge_slots() const { return edge_slots_; }
  const CountVector& degrees() const { return degrees_; }
  Count multiplicity(Index i, Index j) const { return adjacency_(i, j); }

 private:
  CountMatrix adjacency_;
  std::vector<Edge> edge_slots_;
  CountVector degrees_;
};

/// Simple-graph view of a multigraph: x_ij = 1 when at least one edge joins
/// i and j, b the distinct-neighbor counts, y the number of collapsed edges.
struct CollapsedStats {
  CountMatrix x;
  CountVector b;
  Count y = 0;
};

CollapsedStats collapse(const Multigraph& g);

/// Throws DataError when d has negative entries or odd sum.
void validate_degree_sequence(const CountVector& d);

/// True when a loopless multigraph with degree sequence d exists
/// (even sum and max degree at most the sum of the others).
bool degree_sequence_realizable(const CountVector& d);

/// Deterministic construction of one multigraph with degree sequence d,
/// used to seed Markov chains. Greedily joins the two largest residual
/// degrees one edge at a time.
Multigraph realize_degree_sequence(const CountVector& d);

}  // namespace mgnull
