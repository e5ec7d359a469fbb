#include "mgnull/estimators.hpp"

#include <cmath>
#include <limits>

#include "mgnull/multigraph.hpp"

namespace mgnull {

MomentEstimates chung_lu_expectation(const CountVector& d) {
  validate_degree_sequence(d);
  const Count two_m = d.sum();
  if (two_m < 2) throw DataError("degree sequence has no edges");
  const VectorXd dd = d.cast<double>();
  MomentEstimates est;
  est.source = MomentSource::chung_lu;
  est.omega = dd * dd.transpose() / static_cast<double>(two_m);
  est.omega.diagonal().setZero();
  return est;
}

MatrixXd collapse_probability_estimate(const BetaEstimate& estimate) {
  const MatrixXd kernel = bilinear_kernel_matrix(estimate.beta);
  const Index n = kernel.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (kernel(i, j) >= 1.0)
        throw NumericError("kernel entry at pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") is not below 1");
  return kernel;
}

MomentEstimates uniform_adjacency_expectation(const BetaEstimate& estimate) {
  const MatrixXd chi = collapse_probability_estimate(estimate);
  MomentEstimates est;
  est.source = MomentSource::uniform_solver;
  est.omega = (chi.array() / (1.0 - chi.array())).matrix();
  est.omega.diagonal().setZero();
  est.chi = chi;
  est.sigma = (est.omega.array() * (est.omega.array() + 1.0)).sqrt().matrix();
  est.eps_bound = chi_error_bound(estimate.beta, chi);
  est.collapsed_degrees = estimate.beta;
  est.collapsed_edges = estimate.psi;
  return est;
}

MatrixXd chi_error_bound(const VectorXd& beta, const MatrixXd& chi) {
  const Index n = beta.size();
  if (chi.rows() != n || chi.cols() != n) throw DataError("shape mismatch");
  const double two_psi = beta.sum();
  MatrixXd bound = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double pair_min = std::min(beta[i], beta[j]);
      bound(i, j) =
          (2.0 * chi(i, j) * (beta[i] + beta[j] + 7.0) + 3.0 * pair_min) / two_psi;
    }
  }
  return bound;
}

RelativeErrorReport relative_error(const MatrixXd& estimate, const MatrixXd& reference) {
  if (estimate.rows() != reference.rows() || estimate.cols() != reference.cols())
    throw DataError("shape mismatch between estimate and reference");
  const Index n = reference.rows();
  RelativeErrorReport report;
  report.entrywise = MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
  report.entrywise.diagonal().setZero();
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (reference(i, j) > 0.0) {
        const double err = (estimate(i, j) - reference(i, j)) / reference(i, j);
        report.entrywise(i, j) = err;
        report.entrywise(j, i) = err;
        total += std::abs(err);
        ++report.included;
      } else {
        ++report.excluded;
      }
    }
  }
  if (report.included == 0) throw DataError("reference matrix has no positive off-diagonal entries");
  report.mean_abs = total / static_cast<double>(report.included);
  return report;
}

}  // namespace mgnull
