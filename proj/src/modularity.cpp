#include "mgnull/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace mgnull {

namespace {

void validate_labels(const std::vector<int>& labels, Index n) {
  if (static_cast<Index>(labels.size()) != n) throw DataError("label vector has wrong length");
  for (int l : labels)
    if (l < 0) throw DataError("labels must be nonnegative");
}

}  // namespace

int labels_used(const std::vector<int>& labels) {
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

ModularityMatrix modularity_matrix(const Multigraph& g, const MomentEstimates& null_estimate) {
  const Index n = g.node_count();
  if (null_estimate.size() != n) throw DataError("null expectation has wrong shape");
  ModularityMatrix matrix;
  matrix.m = g.adjacency().cast<double>() - null_estimate.omega;
  matrix.null_source = null_estimate.source;
  matrix.two_m = static_cast<double>(2 * g.edge_count());
  return matrix;
}

double modularity(const ModularityMatrix& matrix, const std::vector<int>& labels) {
  const Index n = matrix.m.rows();
  validate_labels(labels, n);
  if (matrix.two_m <= 0.0) throw DataError("modularity matrix has no edges");
  double total = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)])
        total += matrix.m(i, j);
  return total / matrix.two_m;
}

double modularity(const Multigraph& g, const MomentEstimates& null_estimate,
                  const std::vector<int>& labels) {
  return modularity(modularity_matrix(g, null_estimate), labels);
}

std::pair<VectorXd, MatrixXd> top_eigenpairs(const MatrixXd& sym, int count) {
  const Index n = sym.rows();
  const Index k = std::min<Index>(count, n);
  if (n > 2000) return top_eigenpairs_lanczos(sym, static_cast<int>(k));
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(sym);
  VectorXd values(k);
  MatrixXd vectors(n, k);
  for (Index r = 0; r < k; ++r) {
    values[r] = solver.eigenvalues()[n - 1 - r];
    vectors.col(r) = solver.eigenvectors().col(n - 1 - r);
  }
  return {values, vectors};
}

std::pair<VectorXd, MatrixXd> top_eigenpairs_lanczos(const MatrixXd& sym, int count,
                                                     std::uint64_t seed) {
  const Index n = sym.rows();
  const Index k = std::min<Index>(count, n);
  const Index steps = std::min<Index>(n, std::max<Index>(3 * k + 20, 50));

  Rng rng(seed);
  MatrixXd basis(n, steps);
  VectorXd alpha(steps);
  VectorXd beta(steps);

  VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = uniform_unit(rng) - 0.5;
  v.normalize();

  Index built = 0;
  VectorXd prev = VectorXd::Zero(n);
  double off = 0.0;
  for (Index s = 0; s < steps; ++s) {
    basis.col(s) = v;
    VectorXd w = sym * v;
    alpha[s] = v.dot(w);
    w -= alpha[s] * v + off * prev;
    // full reorthogonalization; n is small enough that cost is irrelevant
    w -= basis.leftCols(s + 1) * (basis.leftCols(s + 1).transpose() * w);
    built = s + 1;
    off = w.norm();
    if (off < 1e-12) break;
    beta[s] = off;
    prev = v;
    v = w / off;
  }

  MatrixXd tri = MatrixXd::Zero(built, built);
  for (Index s = 0; s < built; ++s) {
    tri(s, s) = alpha[s];
    if (s + 1 < built) {
      tri(s, s + 1) = beta[s];
      tri(s + 1, s) = beta[s];
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(tri);
  const Index take = std::min<Index>(k, built);
  VectorXd values(take);
  MatrixXd vectors(n, take);
  for (Index r = 0; r < take; ++r) {
    values[r] = solver.eigenvalues()[built - 1 - r];
    vectors.col(r) = basis.leftCols(built) * solver.eigenvectors().col(built - 1 - r);
    vectors.col(r).normalize();
  }
  return {values, vectors};
}

namespace {

struct RestartResult {
  std::vector<int> labels;
  double q = -std::numeric_limits<double>::infinity();
};

// One greedy vector-partitioning run: nodes move to the group whose running
// sum-vector gains the most norm, until a full pass moves nothing.
RestartResult run_restart(const ModularityMatrix& matrix, const MatrixXd& embedding, int k,
                          std::uint64_t seed, int max_passes) {
  const Index n = embedding.rows();
  const Index dim = embedding.cols();
  Rng rng(seed);
  std::vector<int> labels(static_cast<std::size_t>(n));
  MatrixXd group_sums = MatrixXd::Zero(dim, k);
  for (Index i = 0; i < n; ++i) {
    labels[static_cast<std::size_t>(i)] = static_cast<int>(uniform_index(rng, k));
    group_sums.col(labels[static_cast<std::size_t>(i)]) += embedding.row(i).transpose();
  }

  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (Index i = 0; i < n; ++i) {
      const int current = labels[static_cast<std::size_t>(i)];
      const VectorXd r = embedding.row(i).transpose();
      group_sums.col(current) -= r;
      // |R_g + r|^2 - |R_g|^2 differs across groups only through R_g . r
      int best = 0;
      double best_gain = group_sums.col(0).dot(r);
      for (int g = 1; g < k; ++g) {
        const double gain = group_sums.col(g).dot(r);
        if (gain > best_gain) {
          best_gain = gain;
          best = g;
        }
      }
      group_sums.col(best) += r;
      if (best != current) {
        labels[static_cast<std::size_t>(i)] = best;
        moved = true;
      }
    }
    if (!moved) break;
  }

  RestartResult result;
  result.labels = std::move(labels);
  result.q = modularity(matrix, result.labels);
  return result;
}

}  // namespace

Partition multiway_spectral_partition(const ModularityMatrix& matrix, const MspConfig& cfg) {
  const Index n = matrix.m.rows();
  if (cfg.k < 2) throw DataError("need at least two communities");
  if (static_cast<Index>(cfg.k) > n) throw DataError("more communities than nodes");
  if (cfg.restarts < 1) throw DataError("need at least one restart");

  const auto [values, vectors] = top_eigenpairs(matrix.m, cfg.k - 1);
  Index positive = 0;
  while (positive < values.size() && values[positive] > 0.0) ++positive;

  Partition best;
  best.k = cfg.k;
  best.labels.assign(static_cast<std::size_t>(n), 0);
  best.q = modularity(matrix, best.labels);  // all-one fallback candidate

  if (positive == 0) {
    best.degenerate = true;
    return best;
  }

  MatrixXd embedding(n, positive);
  for (Index r = 0; r < positive; ++r)
    embedding.col(r) = std::sqrt(values[r]) * vectors.col(r);

  std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
  const auto worker = [&](int begin, int end) {
    for (int r = begin; r < end; ++r)
      results[static_cast<std::size_t>(r)] = run_restart(
          matrix, embedding, cfg.k, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)),
          cfg.max_passes);
  };
  const int threads = std::max(1, std::min(cfg.threads, cfg.restarts));
  if (threads == 1) {
    worker(0, cfg.restarts);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.restarts + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker, t * chunk, std::min(cfg.restarts, (t + 1) * chunk));
    for (auto& t : pool) t.join();
  }

  for (const auto& result : results) {
    if (result.q > best.q) {
      best.q = result.q;
      best.labels = result.labels;
    }
  }
  return best;
}

}  // namespace mgnull
