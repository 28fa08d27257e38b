#include "occelm/linsolve.hpp"

#include <cmath>
#include <sstream>

#include "occelm/error.hpp"

namespace occelm {

namespace {

double residual_norm(const Eigen::MatrixXd& A, const Eigen::MatrixXd& x, const Eigen::MatrixXd& b) {
  return (A * x - b).norm();
}

template <typename Factor>
Eigen::MatrixXd refine(const Eigen::MatrixXd& A, const Factor& factor, const Eigen::MatrixXd& T,
                       double tol) {
  Eigen::MatrixXd x = factor.solve(T);
  double r = residual_norm(A, x, T);
  for (int step = 0; step < 3 && r > tol; ++step) {
    const Eigen::MatrixXd candidate = x + factor.solve(T - A * x);
    const double rc = residual_norm(A, candidate, T);
    if (!(rc < r)) break;
    x = candidate;
    r = rc;
  }
  return x;
}

}  // namespace

Eigen::MatrixXd solve_regularized(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& T, double C) {
  if (!(C > 0.0)) throw Error(ErrorCode::InvalidArgument, "C must be > 0");
  if (omega.rows() != omega.cols() || omega.rows() != T.rows())
    throw Error(ErrorCode::DimensionMismatch, "system is " + std::to_string(omega.rows()) + "x" +
                                                  std::to_string(omega.cols()) + ", rhs has " +
                                                  std::to_string(T.rows()) + " rows");
  Eigen::MatrixXd A = omega;
  A.diagonal().array() += 1.0 / C;
  const double tol = 1e-8 * (1.0 + T.norm());

  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() == Eigen::Success) return refine(A, llt, T, tol);

  // Not numerically positive definite. A genuinely negative spectrum below
  // -1/C is an input error; anything else is roundoff and still solvable.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  const double slack = 1e-12 * std::max(1.0, hi);
  if (lo < -slack || (lo <= 0.0 && hi == 0.0)) {
    std::ostringstream msg;
    msg << "omega + I/C has eigenvalue " << lo << " (condition estimate "
        << (lo == 0.0 ? INFINITY : hi / std::abs(lo)) << ")";
    throw Error(ErrorCode::SingularSystem, msg.str());
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() == Eigen::Success && ldlt.vectorD().cwiseAbs().minCoeff() > 0.0) {
    Eigen::MatrixXd x = refine(A, ldlt, T, tol);
    if (x.allFinite()) return x;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  return refine(A, cod, T, tol);
}

RlsState rls_init(const Eigen::MatrixXd& H0, const Eigen::MatrixXd& T0) {
  const Eigen::Index n0 = H0.rows();
  const Eigen::Index m = H0.cols();
  if (T0.rows() != n0)
    throw Error(ErrorCode::DimensionMismatch, "H0 has " + std::to_string(n0) + " rows, T0 has " +
                                                  std::to_string(T0.rows()));
  if (n0 < m)
    throw Error(ErrorCode::TooFewInitialSamples, "initial chunk has " + std::to_string(n0) +
                                                     " rows, need at least m = " + std::to_string(m));
  const Eigen::MatrixXd gram = H0.transpose() * H0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxInitCondition) {
    std::ostringstream msg;
    msg << "H0^T H0 condition estimate " << (lo > 0.0 ? hi / lo : INFINITY) << " exceeds "
        << kMaxInitCondition;
    throw Error(ErrorCode::RankDeficient, msg.str());
  }
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::RankDeficient, "H0^T H0 is not positive definite");

  RlsState state;
  state.P = llt.solve(Eigen::MatrixXd::Identity(m, m));
  state.P = (0.5 * (state.P + state.P.transpose())).eval();
  state.beta = llt.solve(H0.transpose() * T0);
  return state;
}

void rls_update(RlsState& state, const Eigen::MatrixXd& H1, const Eigen::MatrixXd& T1) {
  if (H1.cols() != state.hidden() || T1.cols() != state.outputs() || T1.rows() != H1.rows())
    throw Error(ErrorCode::DimensionMismatch, "chunk shape does not match the RLS state");
  if (H1.rows() == 0) return;
  const Eigen::MatrixXd PHt = state.P * H1.transpose();  // m x Nc
  Eigen::MatrixXd S = H1 * PHt;                           // Nc x Nc
  S.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  const Eigen::MatrixXd gain = llt.info() == Eigen::Success
                                   ? Eigen::MatrixXd(llt.solve(PHt.transpose()).transpose())
                                   : Eigen::MatrixXd(S.ldlt().solve(PHt.transpose()).transpose());
  // Gain form of the beta step: P_new H1^T equals P H1^T S^-1, and using the
  // old P avoids the cancellation in P_new when the first block was small.
  state.beta += gain * (T1 - H1 * state.beta);
  state.P -= gain * PHt.transpose();
  state.P = (0.5 * (state.P + state.P.transpose())).eval();
}

}  // namespace occelm
