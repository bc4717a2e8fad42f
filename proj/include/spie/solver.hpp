#pragma once

#include <string>

#include "spie/system.hpp"

namespace spie {

inline constexpr double residual_warn_threshold = 1e-8;
inline constexpr double residual_fail_threshold = 1e-4;

struct Solution {
  Eigen::VectorXd ndgphi;  // n·∇φ per triangle [V/m]
  Eigen::VectorXd v_r;     // reduced potential coefficients [V]
  Eigen::VectorXd phi_a;   // per-object average potential [V]
  Eigen::VectorXd j_t;     // terminal current densities [A/m^2]
  double residual_norm = 0.0;  // ||Ax - b|| / ||b||
  std::string warning;         // empty when healthy
};

/// Direct solve by LU with partial pivoting. Throws NumericalError on an
/// exactly singular pivot (a missing constraint, typically an unconstrained
/// Phi_a) or when the relative residual exceeds 1e-4; warns above 1e-8.
Solution solve(const AssembledSystem& system);

/// 1-norm condition estimate from the LU factors.
double condition_estimate(const AssembledSystem& system);

}  // namespace spie
