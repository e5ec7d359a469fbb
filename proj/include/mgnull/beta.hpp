#pragma once

#include <string>
#include <vector>

#include "mgnull/types.hpp"

namespace mgnull {

enum class BetaClass { physical, well_behaved, neither };

std::string to_string(BetaClass c);

/// Solution of the implied-degree system, with convergence metadata.
/// Non-convergence is a reported state, not an error: for some degree
/// sequences (a single star, for example) no solution exists.
struct BetaEstimate {
  VectorXd beta;
  double psi = 0.0;                    // half the sum of beta
  int sweeps = 0;
  double final_mse = 0.0;              // n^-1 ||h(beta) - d||_2^2
  double final_scaled_residual = 0.0;  // n^-1 ||h(beta) - d||_2
  bool converged = false;
  BetaClass classification = BetaClass::neither;
  double delta = 0.0;                  // parameter used for classification
  std::vector<double> mse_trace;       // per-sweep mse
};

struct SolverConfig {
  double tol = 1e-12;        // stopping threshold on the per-sweep mse
  int max_sweeps = 10'000;
  double inner_tol = 1e-14;  // relative bracket width for coordinate roots
  double classification_delta = 1e-9;
  VectorXd initial;          // empty: all ones
};

/// Bilinear kernel beta_i beta_j / (2 psi), psi recomputed from beta.
/// Shared functional form of the Chung-Lu formula and the collapse
/// probability estimate.
template <typename Derived>
double bilinear_kernel(const Eigen::MatrixBase<Derived>& beta, Index i, Index j) {
  if (i == j) throw std::invalid_argument("bilinear kernel is defined off-diagonal only");
  const double two_psi = beta.sum();
  return beta[i] * beta[j] / two_psi;
}

/// Full kernel matrix with zero diagonal.
MatrixXd bilinear_kernel_matrix(const VectorXd& beta);

/// h(beta): row sums of the odds kernel / (1 - kernel). Throws NumericError
/// naming the first pair whose kernel entry reaches 1.
VectorXd implied_degrees(const VectorXd& beta);

/// Root of the single-coordinate equation h_i(beta_1,...,b,...,beta_n) = d_i,
/// holding the half-sum at its value for the current iterate. The root is
/// unique on (0, 2 psi / max_{l != i} beta_l); bracketed bisection with
/// Newton acceleration finds it.
double solve_coordinate(const VectorXd& beta, Index i, double target_degree,
                        double inner_tol = 1e-14);

/// Coordinate-sweep solver for h(beta) = d.
BetaEstimate estimate_collapsed_degrees(const CountVector& d, const SolverConfig& cfg = {});

/// Jacobian of the implied-degree map, assembled in the product form
/// (S + D)(B^-1 - E / (4 psi)).
MatrixXd implied_degree_jacobian(const VectorXd& beta);

/// physical: 1 <= beta_i <= n-1 for all i. well_behaved: additionally
/// (max beta)^2 <= sum(beta) - delta.
BetaClass classify_beta(const VectorXd& beta, double delta);

}  // namespace mgnull
