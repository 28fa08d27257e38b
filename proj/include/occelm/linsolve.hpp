#pragma once

#include <Eigen/Dense>

namespace occelm {

/// Solves (omega + I/C) beta = T for symmetric positive semidefinite omega.
/// Cholesky first; LDL^T and then a complete orthogonal decomposition take
/// over when roundoff breaks positive definiteness at large C. Throws
/// SingularSystem only when omega has an eigenvalue at or below -1/C.
Eigen::MatrixXd solve_regularized(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& T, double C);

/// Recursive least-squares state for online ELM training.
struct RlsState {
  Eigen::MatrixXd P;     // m x m, inverse information matrix
  Eigen::MatrixXd beta;  // m x k

  Eigen::Index hidden() const { return P.rows(); }
  Eigen::Index outputs() const { return beta.cols(); }
};

/// Largest acceptable condition number of H0^T H0 at initialisation.
inline constexpr double kMaxInitCondition = 1e12;

/// P0 = (H0^T H0)^-1, beta0 = P0 H0^T T0.
RlsState rls_init(const Eigen::MatrixXd& H0, const Eigen::MatrixXd& T0);

/// P <- P - P H^T (I + H P H^T)^-1 H P, then beta <- beta + P H^T (T - H beta).
void rls_update(RlsState& state, const Eigen::MatrixXd& H1, const Eigen::MatrixXd& T1);

}  // namespace occelm
