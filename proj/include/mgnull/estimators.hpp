#pragma once

#include "mgnull/beta.hpp"
#include "mgnull/moments.hpp"
#include "mgnull/types.hpp"

namespace mgnull {

/// Chung-Lu expectation d_i d_j / (2m) off-diagonal. First-order
/// approximation, exact only in expectation under soft degree constraints.
MomentEstimates chung_lu_expectation(const CountVector& d);

/// Probability that at least one edge joins each pair, evaluated from a
/// solved collapsed-degree vector.
MatrixXd collapse_probability_estimate(const BetaEstimate& estimate);

/// Expected adjacency under the uniform model: odds form kernel/(1-kernel),
/// with matching chi, entrywise standard deviation, and the diagnostic
/// error bound.
MomentEstimates uniform_adjacency_expectation(const BetaEstimate& estimate);

/// Diagnostic bound on the collapse-probability approximation. Uses unit
/// regularity constants, which is a conjecture rather than a theorem; treat
/// the output as indicative.
MatrixXd chi_error_bound(const VectorXd& beta, const MatrixXd& chi);

struct RelativeErrorReport {
  MatrixXd entrywise;   // (estimate - reference) / reference; NaN where excluded
  double mean_abs = 0;  // mean of |entrywise| over included unordered pairs
  Index included = 0;
  Index excluded = 0;   // off-diagonal pairs with nonpositive reference
};

/// Entrywise relative error of estimate against reference, off-diagonal
/// pairs only. Pairs whose reference entry is zero are excluded and counted.
RelativeErrorReport relative_error(const MatrixXd& estimate, const MatrixXd& reference);

}  // namespace mgnull
