#include "mgnull/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgnull {

std::string to_string(BetaClass c) {
  switch (c) {
    case BetaClass::physical: return "physical";
    case BetaClass::well_behaved: return "well_behaved";
    case BetaClass::neither: return "neither";
  }
  return "neither";
}

namespace {

void require_positive(const VectorXd& beta) {
  if (beta.size() == 0) throw DataError("empty vector");
  if (!(beta.array() > 0.0).all()) throw NumericError("vector must be entrywise positive");
}

void require_subcritical(const MatrixXd& kernel) {
  const Index n = kernel.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (kernel(i, j) >= 1.0)
        throw NumericError("kernel entry at pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") is not below 1");
}

}  // namespace

MatrixXd bilinear_kernel_matrix(const VectorXd& beta) {
  const double two_psi = beta.sum();
  MatrixXd kernel = beta * beta.transpose() / two_psi;
  kernel.diagonal().setZero();
  return kernel;
}

VectorXd implied_degrees(const VectorXd& beta) {
  require_positive(beta);
  const MatrixXd kernel = bilinear_kernel_matrix(beta);
  require_subcritical(kernel);
  MatrixXd odds = kernel.array() / (1.0 - kernel.array());
  odds.diagonal().setZero();
  return odds.rowwise().sum();
}

double solve_coordinate(const VectorXd& beta, Index i, double target_degree,
                        double inner_tol) {
  require_positive(beta);
  const Index n = beta.size();
  if (n < 2) throw DataError("need at least two nodes");
  if (!(target_degree > 0.0)) throw DataError("target degree must be positive");

  // The half-sum is held at its value for the current iterate while the
  // single-variable equation is solved; on the resulting bracket
  // (0, 2 psi / max beta) the equation always has exactly one root.
  const double two_psi = beta.sum();
  double beta_max = 0.0;
  for (Index l = 0; l < n; ++l)
    if (l != i) beta_max = std::max(beta_max, beta[l]);

  const auto eval = [&](double b, double* deriv) {
    double value = 0.0;
    double slope = 0.0;
    for (Index l = 0; l < n; ++l) {
      if (l == i) continue;
      const double den = two_psi - b * beta[l];
      value += b * beta[l] / den;
      if (deriv) slope += beta[l] / (den * den);
    }
    if (deriv) *deriv = two_psi * slope;
    return value;
  };

  double hi = (two_psi / beta_max) * (1.0 - 1e-12);
  if (eval(hi, nullptr) < target_degree)
    throw NumericError("coordinate " + std::to_string(i) +
                       ": no bracket for target degree " + std::to_string(target_degree));

  double lo = 0.0;
  const double width_tol = inner_tol * hi;
  double b = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200 && hi - lo > width_tol; ++iter) {
    double deriv = 0.0;
    const double value = eval(b, &deriv) - target_degree;
    if (std::abs(value) <= 1e-13 * std::max(1.0, std::abs(target_degree))) break;
    if (value > 0.0)
      hi = b;
    else
      lo = b;
    double next = b - value / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    b = next;
  }
  return b;
}

BetaEstimate estimate_collapsed_degrees(const CountVector& d, const SolverConfig& cfg) {
  if (d.size() < 2) throw DataError("need at least two nodes");
  if ((d.array() <= 0).any())
    throw DataError("degree sequence contains zeros; remove degree-zero nodes first");
  if (d.sum() % 2 != 0) throw DataError("odd degree sum");

  const Index n = d.size();
  VectorXd beta = cfg.initial.size() == 0 ? VectorXd::Ones(n) : cfg.initial;
  if (beta.size() != n) throw DataError("initial vector has wrong length");
  require_positive(beta);

  const VectorXd target = d.cast<double>();
  BetaEstimate estimate;
  estimate.delta = cfg.classification_delta;

  // Transient iterates may have kernel entries at or above 1 for pairs not
  // involving the coordinate just updated; score those sweeps as infinitely
  // bad instead of failing.
  const auto lenient_mse = [&] {
    const MatrixXd kernel = bilinear_kernel_matrix(beta);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      double hi = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        if (kernel(i, j) >= 1.0) return std::numeric_limits<double>::infinity();
        hi += kernel(i, j) / (1.0 - kernel(i, j));
      }
      const double r = hi - target[i];
      total += r * r;
    }
    return total / static_cast<double>(n);
  };

  double mse = std::numeric_limits<double>::infinity();
  int sweep = 0;
  while (sweep < cfg.max_sweeps) {
    ++sweep;
    for (Index i = 0; i < n; ++i) {
      try {
        beta[i] = solve_coordinate(beta, i, target[i], cfg.inner_tol);
      } catch (const NumericError&) {
        // no root for this coordinate given the others; leave it and let the
        // run end as non-converged if the situation persists
      }
    }
    mse = lenient_mse();
    estimate.mse_trace.push_back(mse);
    if (mse <= cfg.tol) break;
  }

  estimate.beta = beta;
  estimate.psi = beta.sum() / 2.0;
  estimate.sweeps = sweep;
  estimate.final_mse = mse;
  estimate.final_scaled_residual = std::sqrt(mse / static_cast<double>(n));
  estimate.converged = mse <= cfg.tol;
  estimate.classification = classify_beta(beta, cfg.classification_delta);
  return estimate;
}

MatrixXd implied_degree_jacobian(const VectorXd& beta) {
  require_positive(beta);
  const Index n = beta.size();
  const double psi = beta.sum() / 2.0;
  const MatrixXd kernel = bilinear_kernel_matrix(beta);
  require_subcritical(kernel);

  MatrixXd s = kernel.array() / (1.0 - kernel.array()).square();
  s.diagonal().setZero();
  MatrixXd sd = s;
  sd.diagonal() = s.rowwise().sum();

  MatrixXd right = MatrixXd::Constant(n, n, -1.0 / (4.0 * psi));
  right.diagonal().array() += beta.array().inverse();
  return sd * right;
}

BetaClass classify_beta(const VectorXd& beta, double delta) {
  const Index n = beta.size();
  if (n == 0) return BetaClass::neither;
  const double upper = static_cast<double>(n - 1);
  const bool physical = (beta.array() >= 1.0).all() && (beta.array() <= upper).all();
  if (!physical) return BetaClass::neither;
  const double top = beta.maxCoeff();
  if (top * top <= beta.sum() - delta) return BetaClass::well_behaved;
  return BetaClass::physical;
}

}  // namespace mgnull
