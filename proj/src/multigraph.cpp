#include "mgnull/multigraph.hpp"

#include <algorithm>
#include <queue>

namespace mgnull {

Multigraph::Multigraph(CountMatrix adjacency) : adjacency_(std::move(adjacency)) {
  const Index n = adjacency_.rows();
  if (adjacency_.cols() != n) throw DataError("adjacency matrix must be square");
  for (Index i = 0; i < n; ++i) {
    if (adjacency_(i, i) != 0) throw DataError("self-loops are not allowed");
    for (Index j = i + 1; j < n; ++j) {
      if (adjacency_(i, j) != adjacency_(j, i)) throw DataError("adjacency matrix must be symmetric");
      if (adjacency_(i, j) < 0) throw DataError("edge multiplicities must be nonnegative");
      for (Count c = 0; c < adjacency_(i, j); ++c) edge_slots_.emplace_back(i, j);
    }
  }
  degrees_ = adjacency_.rowwise().sum();
}

Multigraph Multigraph::from_edges(Index node_count, const std::vector<Edge>& edges) {
  CountMatrix w = CountMatrix::Zero(node_count, node_count);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw DataError("edge endpoint out of range");
    if (u == v) throw DataError("self-loops are not allowed");
    w(u, v) += 1;
    w(v, u) += 1;
  }
  return Multigraph(std::move(w));
}

CollapsedStats collapse(const Multigraph& g) {
  CollapsedStats stats;
  stats.x = (g.adjacency().array() >= 1).cast<Count>().matrix();
  stats.x.diagonal().setZero();
  stats.b = stats.x.rowwise().sum();
  stats.y = stats.b.sum() / 2;
  return stats;
}

void validate_degree_sequence(const CountVector& d) {
  if (d.size() == 0) throw DataError("empty degree sequence");
  if ((d.array() < 0).any()) throw DataError("degrees must be nonnegative");
  if (d.sum() % 2 != 0) throw DataError("odd degree sum");
}

bool degree_sequence_realizable(const CountVector& d) {
  if (d.size() == 0 || (d.array() < 0).any() || d.sum() % 2 != 0) return false;
  return 2 * d.maxCoeff() <= d.sum();
}

Multigraph realize_degree_sequence(const CountVector& d) {
  validate_degree_sequence(d);
  if (!degree_sequence_realizable(d))
    throw DataError("degree sequence is not realizable as a loopless multigraph");
  const Index n = d.size();
  std::priority_queue<std::pair<Count, Index>> residual;
  for (Index i = 0; i < n; ++i)
    if (d[i] > 0) residual.emplace(d[i], i);
  std::vector<Multigraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(d.sum() / 2));
  while (residual.size() >= 2) {
    auto [ra, a] = residual.top();
    residual.pop();
    auto [rb, b] = residual.top();
    residual.pop();
    edges.emplace_back(std::min(a, b), std::max(a, b));
    if (ra > 1) residual.emplace(ra - 1, a);
    if (rb > 1) residual.emplace(rb - 1, b);
  }
  return Multigraph::from_edges(n, edges);
}

}  // namespace mgnull
