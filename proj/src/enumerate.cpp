#include "mgnull/enumerate.hpp"

#include <algorithm>
#include <map>

namespace mgnull {

namespace {

using Key = std::vector<Count>;  // upper triangle, row-major

Key upper_triangle(const CountMatrix& w) {
  const Index n = w.rows();
  Key key;
  key.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) key.push_back(w(i, j));
  return key;
}

// Recursively assigns multiplicities to node pairs in lexicographic order.
// Residual degrees must be exhausted exactly when a row is completed.
void enumerate_graphs(Index i, Index j, CountMatrix& w, CountVector& residual,
                      std::vector<CountMatrix>& out) {
  const Index n = w.rows();
  if (i == n - 1) {
    if (residual[i] == 0) out.push_back(w);
    return;
  }
  if (j == n) {
    if (residual[i] != 0) return;
    enumerate_graphs(i + 1, i + 2, w, residual, out);
    return;
  }
  const Count cap = std::min(residual[i], residual[j]);
  for (Count c = 0; c <= cap; ++c) {
    w(i, j) = c;
    w(j, i) = c;
    residual[i] -= c;
    residual[j] -= c;
    enumerate_graphs(i, j + 1, w, residual, out);
    residual[i] += c;
    residual[j] += c;
  }
  w(i, j) = 0;
  w(j, i) = 0;
}

// Counts every self-loop-free perfect matching of the stub multiset,
// tallied by the multigraph it maps to. Matching the lowest unmatched stub
// first visits each matching exactly once.
void enumerate_matchings(std::vector<Index>& stub_node, std::vector<bool>& used,
                         CountMatrix& w, std::map<Key, Count>& tally) {
  const std::size_t total = stub_node.size();
  std::size_t first = 0;
  while (first < total && used[first]) ++first;
  if (first == total) {
    ++tally[upper_triangle(w)];
    return;
  }
  used[first] = true;
  for (std::size_t other = first + 1; other < total; ++other) {
    if (used[other] || stub_node[other] == stub_node[first]) continue;
    used[other] = true;
    const Index a = stub_node[first];
    const Index b = stub_node[other];
    w(a, b) += 1;
    w(b, a) += 1;
    enumerate_matchings(stub_node, used, w, tally);
    w(a, b) -= 1;
    w(b, a) -= 1;
    used[other] = false;
  }
  used[first] = false;
}

}  // namespace

EnumeratedEnsemble enumerate_ensemble(const CountVector& d, Count max_edges) {
  validate_degree_sequence(d);
  const Count m = d.sum() / 2;
  if (m > max_edges)
    throw DataError("edge count " + std::to_string(m) + " exceeds enumeration cap " +
                    std::to_string(max_edges));

  const Index n = d.size();
  EnumeratedEnsemble ensemble;
  ensemble.d = d;

  CountMatrix w = CountMatrix::Zero(n, n);
  CountVector residual = d;
  enumerate_graphs(0, 1, w, residual, ensemble.graphs);

  std::vector<Index> stub_node;
  stub_node.reserve(static_cast<std::size_t>(2 * m));
  for (Index i = 0; i < n; ++i)
    for (Count s = 0; s < d[i]; ++s) stub_node.push_back(i);
  std::vector<bool> used(stub_node.size(), false);
  CountMatrix scratch = CountMatrix::Zero(n, n);
  std::map<Key, Count> tally;
  enumerate_matchings(stub_node, used, scratch, tally);

  if (tally.size() != ensemble.graphs.size())
    throw NumericError("stub enumeration support disagrees with direct enumeration");
  ensemble.config_weights.reserve(ensemble.graphs.size());
  for (const auto& g : ensemble.graphs) {
    const auto it = tally.find(upper_triangle(g));
    if (it == tally.end())
      throw NumericError("graph missing from stub enumeration support");
    ensemble.config_weights.push_back(it->second);
  }
  return ensemble;
}

MomentEstimates oracle_moments(const EnumeratedEnsemble& ensemble, GraphModel model) {
  if (ensemble.graphs.empty()) throw DataError("empty ensemble");
  const Index n = ensemble.d.size();

  VectorXd weights(static_cast<Index>(ensemble.size()));
  for (std::size_t g = 0; g < ensemble.size(); ++g)
    weights[static_cast<Index>(g)] =
        model == GraphModel::uniform ? 1.0 : static_cast<double>(ensemble.config_weights[g]);
  weights /= weights.sum();

  MomentEstimates est;
  est.source = MomentSource::oracle;
  est.omega = MatrixXd::Zero(n, n);
  MatrixXd chi = MatrixXd::Zero(n, n);
  MatrixXd second = MatrixXd::Zero(n, n);
  MatrixXd inner = MatrixXd::Zero(n, n);
  VectorXd beta = VectorXd::Zero(n);
  double psi = 0.0;

  for (std::size_t g = 0; g < ensemble.size(); ++g) {
    const double p = weights[static_cast<Index>(g)];
    const MatrixXd wd = ensemble.graphs[g].cast<double>();
    est.omega += p * wd;
    chi += p * (wd.array() >= 1.0).cast<double>().matrix();
    second += p * wd.cwiseProduct(wd);
    inner += p * (wd * wd);
    const VectorXd b = (wd.array() >= 1.0).cast<double>().matrix().rowwise().sum();
    beta += p * b;
    psi += p * b.sum() / 2.0;
  }

  est.chi = chi;
  est.second_moment = second;
  est.row_inner = inner;
  est.sigma = (second - est.omega.cwiseProduct(est.omega)).cwiseMax(0.0).cwiseSqrt();
  est.collapsed_degrees = beta;
  est.collapsed_edges = psi;
  return est;
}

}  // namespace mgnull
