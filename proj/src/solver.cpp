#include "spie/solver.hpp"

#include <Eigen/LU>

#include <sstream>

namespace spie {

namespace {

Eigen::PartialPivLU<Eigen::MatrixXd> factorize(const AssembledSystem& sys) {
  if (sys.matrix.rows() != sys.matrix.cols())
    throw Error("solve: system matrix is not square");
  if (sys.matrix.rows() == 0) throw Error("solve: empty system");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (diag(i) == 0.0)
      throw NumericalError(
          "singular pivot at elimination step " + std::to_string(i) +
          ": the system is missing a constraint (typically an object without "
          "a charge row, potential row, or port-set membership)");
  return lu;
}

}  // namespace

Solution solve(const AssembledSystem& sys) {
  const auto lu = factorize(sys);
  const Eigen::VectorXd x = lu.solve(sys.rhs);

  Solution sol;
  const double bnorm = sys.rhs.norm();
  const double rnorm = (sys.matrix * x - sys.rhs).norm();
  sol.residual_norm = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  if (sol.residual_norm > residual_fail_threshold) {
    std::ostringstream msg;
    msg << "relative residual " << sol.residual_norm << " exceeds "
        << residual_fail_threshold;
    throw NumericalError(msg.str());
  }
  if (sol.residual_norm > residual_warn_threshold) {
    std::ostringstream msg;
    msg << "relative residual " << sol.residual_norm
        << " is above the health threshold " << residual_warn_threshold;
    sol.warning = msg.str();
  }

  sol.ndgphi = x.segment(sys.col_ndg(), sys.n_tri);
  sol.v_r = x.segment(sys.col_vr(), sys.n_vr);
  sol.phi_a = x.segment(sys.col_phia(), sys.n_obj);
  sol.j_t = x.segment(sys.col_jt(), sys.n_term);
  return sol;
}

double condition_estimate(const AssembledSystem& sys) {
  const auto lu = factorize(sys);
  const double rcond = lu.rcond();
  if (rcond <= 0.0)
    throw NumericalError("condition estimate: matrix is numerically singular");
  return 1.0 / rcond;
}

}  // namespace spie
