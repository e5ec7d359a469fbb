#include "mgnull/mcmc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace mgnull {

MomentAccumulator::MomentAccumulator(Index n, Count batch_size, bool track_row_inner)
    : n_(n), batch_size_(std::max<Count>(1, batch_size)), track_row_inner_(track_row_inner) {
  sum_w_ = MatrixXd::Zero(n, n);
  sum_w2_ = MatrixXd::Zero(n, n);
  sum_x_ = MatrixXd::Zero(n, n);
  sum_b_ = VectorXd::Zero(n);
  if (track_row_inner_) sum_row_inner_ = MatrixXd::Zero(n, n);
  batch_w_ = MatrixXd::Zero(n, n);
  batch_x_ = MatrixXd::Zero(n, n);
  batch_w_mean_sum_ = MatrixXd::Zero(n, n);
  batch_w_mean_sq_ = MatrixXd::Zero(n, n);
  batch_x_mean_sum_ = MatrixXd::Zero(n, n);
  batch_x_mean_sq_ = MatrixXd::Zero(n, n);
}

void MomentAccumulator::add_sample(const CountMatrix& w) {
  if (w.rows() != n_ || w.cols() != n_) throw DataError("sample has wrong shape");
  const MatrixXd wd = w.cast<double>();
  const MatrixXd x = (wd.array() >= 1.0).cast<double>().matrix();
  ++count_;
  sum_w_ += wd;
  sum_w2_ += wd.cwiseProduct(wd);
  sum_x_ += x;
  const VectorXd b = x.rowwise().sum();
  sum_b_ += b;
  sum_y_ += b.sum() / 2.0;
  if (track_row_inner_) sum_row_inner_ += wd * wd;

  batch_w_ += wd;
  batch_x_ += x;
  if (++batch_fill_ == batch_size_) {
    const double inv = 1.0 / static_cast<double>(batch_size_);
    batch_w_mean_sum_ += batch_w_ * inv;
    batch_w_mean_sq_ += (batch_w_ * inv).cwiseAbs2();
    batch_x_mean_sum_ += batch_x_ * inv;
    batch_x_mean_sq_ += (batch_x_ * inv).cwiseAbs2();
    batch_w_.setZero();
    batch_x_.setZero();
    batch_fill_ = 0;
    ++completed_batches_;
  }
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ != n_) throw DataError("cannot merge accumulators of different sizes");
  if (other.batch_size_ != batch_size_)
    throw DataError("cannot merge accumulators with different batch sizes");
  if (other.track_row_inner_ != track_row_inner_)
    throw DataError("cannot merge accumulators with different tracking options");
  count_ += other.count_;
  sum_w_ += other.sum_w_;
  sum_w2_ += other.sum_w2_;
  sum_x_ += other.sum_x_;
  sum_b_ += other.sum_b_;
  sum_y_ += other.sum_y_;
  if (track_row_inner_) sum_row_inner_ += other.sum_row_inner_;
  // partial batches are dropped from standard-error bookkeeping
  batch_w_mean_sum_ += other.batch_w_mean_sum_;
  batch_w_mean_sq_ += other.batch_w_mean_sq_;
  batch_x_mean_sum_ += other.batch_x_mean_sum_;
  batch_x_mean_sq_ += other.batch_x_mean_sq_;
  completed_batches_ += other.completed_batches_;
  stats.proposals += other.stats.proposals;
  stats.accepted += other.stats.accepted;
  stats.rejected += other.stats.rejected;
  stats.collisions += other.stats.collisions;
  stats.burn_in_proposals += other.stats.burn_in_proposals;
  stats.burn_in_accepted += other.stats.burn_in_accepted;
}

MatrixXd MomentAccumulator::batch_standard_error(const MatrixXd& mean_sum,
                                                 const MatrixXd& mean_sq) const {
  const double b = static_cast<double>(completed_batches_);
  const MatrixXd mean = mean_sum / b;
  const MatrixXd var_of_mean = (mean_sq / b - mean.cwiseAbs2()).cwiseMax(0.0) / (b - 1.0);
  return var_of_mean.cwiseSqrt();
}

MatrixXd MomentAccumulator::omega_standard_error() const {
  if (completed_batches_ < 2) throw NumericError("need at least two full batches");
  return batch_standard_error(batch_w_mean_sum_, batch_w_mean_sq_);
}

MatrixXd MomentAccumulator::chi_standard_error() const {
  if (completed_batches_ < 2) throw NumericError("need at least two full batches");
  return batch_standard_error(batch_x_mean_sum_, batch_x_mean_sq_);
}

double swap_acceptance(GraphModel target, Count w_ij, Count w_kl) {
  if (target == GraphModel::configuration) return 1.0;
  return 1.0 / (static_cast<double>(w_ij) * static_cast<double>(w_kl));
}

namespace {

// Mutable chain state: adjacency plus one slot per parallel edge, updated
// in place so every proposal is O(1).
struct ChainState {
  CountMatrix w;
  std::vector<std::pair<Index, Index>> slots;
#ifndef NDEBUG
  CountVector degrees;
#endif

  explicit ChainState(const Multigraph& g) : w(g.adjacency()), slots(g.edge_slots()) {
#ifndef NDEBUG
    degrees = g.degrees();
#endif
  }

  enum class Result { accepted, rejected, collision };

  Result step(GraphModel target, Rng& rng) {
    const Index m = static_cast<Index>(slots.size());
    const Index a = uniform_index(rng, m);
    Index b = uniform_index(rng, m - 1);
    if (b >= a) ++b;
    const auto [i, j] = slots[a];
    const auto [k, l] = slots[b];
    if (i == k || i == l || j == k || j == l) return Result::collision;

    const bool first_orientation = uniform_unit(rng) < 0.5;
    const double acceptance = swap_acceptance(target, w(i, j), w(k, l));
    if (uniform_unit(rng) > acceptance) return Result::rejected;

    w(i, j) -= 1;
    w(j, i) -= 1;
    w(k, l) -= 1;
    w(l, k) -= 1;
    Index p = i, q = k, r = j, s = l;
    if (!first_orientation) std::swap(q, s);
    w(p, q) += 1;
    w(q, p) += 1;
    w(r, s) += 1;
    w(s, r) += 1;
    slots[a] = {std::min(p, q), std::max(p, q)};
    slots[b] = {std::min(r, s), std::max(r, s)};
    assert(w(i, j) >= 0 && w(k, l) >= 0);
    assert(w.row(i).sum() == degrees[i] && w.row(j).sum() == degrees[j]);
    assert(w.row(k).sum() == degrees[k] && w.row(l).sum() == degrees[l]);
    return Result::accepted;
  }
};

void run_single_chain(const Multigraph& g0, const ChainConfig& cfg, MomentAccumulator& acc) {
  const Count m = g0.edge_count();
  if (m < 2) throw DataError("chain has no moves: need at least two edges");
  if (cfg.sample_count < 1) throw DataError("sample count must be positive");
  if (cfg.sample_interval < 0) throw DataError("sample interval must be positive");
  const Count dt = cfg.sample_interval > 0 ? cfg.sample_interval : std::max<Count>(10, m);

  ChainState state(g0);
  Rng rng(cfg.seed);

  if (cfg.burn_in >= 0) {
    for (Count t = 0; t < cfg.burn_in; ++t) {
      if (state.step(cfg.target, rng) == ChainState::Result::accepted) ++acc.stats.burn_in_accepted;
      ++acc.stats.burn_in_proposals;
    }
  } else {
    // Default: run until 10 m swaps were accepted. Chains that cannot move
    // (all slot pairs collide) are stopped by the proposal cap.
    const Count target_accepted = 10 * m;
    const Count cap = std::max<Count>(10'000, 1'000 * m);
    while (acc.stats.burn_in_accepted < target_accepted && acc.stats.burn_in_proposals < cap) {
      if (state.step(cfg.target, rng) == ChainState::Result::accepted) ++acc.stats.burn_in_accepted;
      ++acc.stats.burn_in_proposals;
    }
  }

  for (Count sample = 0; sample < cfg.sample_count; ++sample) {
    for (Count t = 0; t < dt; ++t) {
      switch (state.step(cfg.target, rng)) {
        case ChainState::Result::accepted: ++acc.stats.accepted; break;
        case ChainState::Result::rejected: ++acc.stats.rejected; break;
        case ChainState::Result::collision: ++acc.stats.collisions; break;
      }
      ++acc.stats.proposals;
    }
    acc.add_sample(state.w);
  }
}

}  // namespace

std::pair<Multigraph, bool> propose_and_step(const Multigraph& state, GraphModel target, Rng& rng) {
  if (state.edge_count() < 2) throw DataError("chain has no moves: need at least two edges");
  ChainState chain(state);
  const bool accepted = chain.step(target, rng) == ChainState::Result::accepted;
  return {Multigraph(std::move(chain.w)), accepted};
}

MomentAccumulator run_chain(const Multigraph& g0, const ChainConfig& cfg) {
  const Count batch_size = std::max<Count>(1, cfg.sample_count / std::max(1, cfg.batch_count));
  MomentAccumulator acc(g0.node_count(), batch_size, cfg.track_row_inner);
  run_single_chain(g0, cfg, acc);
  return acc;
}

MomentAccumulator run_chains(const Multigraph& g0, const ChainConfig& cfg, int threads) {
  const int chains = std::max(1, std::min<int>(threads, static_cast<int>(cfg.sample_count)));
  if (chains == 1) return run_chain(g0, cfg);

  const Count batch_size = std::max<Count>(1, cfg.sample_count / std::max(1, cfg.batch_count));
  std::vector<MomentAccumulator> parts;
  parts.reserve(static_cast<std::size_t>(chains));
  std::vector<ChainConfig> configs;
  for (int c = 0; c < chains; ++c) {
    ChainConfig part = cfg;
    part.sample_count = cfg.sample_count / chains + (c < cfg.sample_count % chains ? 1 : 0);
    part.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(c));
    configs.push_back(part);
    parts.emplace_back(g0.node_count(), batch_size, cfg.track_row_inner);
  }

  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));
  for (int c = 0; c < chains; ++c) {
    workers.emplace_back([&, c] {
      try {
        run_single_chain(g0, configs[static_cast<std::size_t>(c)],
                         parts[static_cast<std::size_t>(c)]);
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  MomentAccumulator merged = std::move(parts.front());
  for (std::size_t c = 1; c < parts.size(); ++c) merged.merge(parts[c]);
  return merged;
}

MomentEstimates mc_estimates(const MomentAccumulator& acc) {
  if (acc.count() < 1) throw DataError("accumulator holds no samples");
  const double count = static_cast<double>(acc.count());
  MomentEstimates est;
  est.source = MomentSource::mcmc;
  est.omega = acc.sum_w() / count;
  est.chi = acc.sum_x() / count;
  est.second_moment = acc.sum_w2() / count;
  est.sigma = (*est.second_moment - est.omega.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
  est.collapsed_degrees = acc.sum_b() / count;
  est.collapsed_edges = acc.sum_y() / count;
  if (acc.tracks_row_inner()) est.row_inner = acc.sum_row_inner() / count;
  if (acc.completed_batches() >= 2) {
    est.omega_se = acc.omega_standard_error();
    est.chi_se = acc.chi_standard_error();
  }
  return est;
}

MatrixXd configuration_identity_residual(const MomentEstimates& est, const CountVector& d) {
  if (!est.row_inner || !est.second_moment)
    throw DataError("estimates lack row inner products; rerun with tracking enabled");
  const Index n = d.size();
  if (est.size() != n) throw DataError("shape mismatch");
  const double two_m = static_cast<double>(d.sum());
  MatrixXd residual = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double di = static_cast<double>(d[i]);
      const double dj = static_cast<double>(d[j]);
      const double denom = two_m - di - dj;
      if (denom == 0.0) {
        residual(i, j) = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      const double implied =
          (di * dj - (*est.row_inner)(i, j) - (*est.second_moment)(i, j)) / denom;
      residual(i, j) = est.omega(i, j) - implied;
    }
  }
  return residual;
}

MatrixXd configuration_identity_residual(const MomentAccumulator& acc, const CountVector& d) {
  return configuration_identity_residual(mc_estimates(acc), d);
}

}  // namespace mgnull
