#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spie/basis.hpp"
#include "spie/excitation.hpp"
#include "spie/operators.hpp"

namespace spie {

/// Total-charge rows: one per isolated object or port-connected set, entries
/// -eps0*A_n on the n·∇φ columns of member triangles. No row for objects held
/// at an applied potential.
struct ChargeRows {
  Eigen::MatrixXd S;            // n_rows x N
  Eigen::VectorXd Q;            // [C]
  std::vector<std::vector<int>> sets;  // objects covered by each row
};
ChargeRows build_charge_rows(const SurfaceMesh& mesh,
                             const ExcitationSpec& spec);

/// Applied-potential rows: pin Phi at one triangle per object, expressed in
/// the (v_r, Phi_a) unknowns.
struct PotentialRows {
  Eigen::MatrixXd vr;    // n_rows x n_vr
  Eigen::MatrixXd phia;  // n_rows x n_obj
  Eigen::VectorXd rhs;   // [V]
  std::vector<int> pinned_triangle;
};
PotentialRows build_potential_rows(const SurfaceMesh& mesh,
                                   const ExcitationSpec& spec,
                                   const ReducedBasis& basis);

/// KVL rows (two per port, one per terminal current) and KCL rows (one per
/// object of a connected set, minus the redundant last one).
struct CircuitRows {
  Eigen::MatrixXd kvl_vr;
  Eigen::MatrixXd kvl_phia;
  Eigen::MatrixXd kvl_jt;
  Eigen::VectorXd v_src;
  Eigen::MatrixXd kcl_jt;
};
CircuitRows build_circuit_rows(const SurfaceMesh& mesh,
                               const ExcitationSpec& spec,
                               const ReducedBasis& basis);

/// The assembled block system. Row blocks in order: external SPIE (N),
/// projected internal SPIE (N - N_obj), charge, potential, KVL, KCL rows.
/// Column blocks: n·∇φ (N), v_r (N - N_obj), Phi_a (N_obj), J_T (N_term).
struct AssembledSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;

  int n_tri = 0;
  int n_vr = 0;
  int n_obj = 0;
  int n_term = 0;

  int n_charge_rows = 0;
  int n_potential_rows = 0;
  int n_kvl_rows = 0;
  int n_kcl_rows = 0;

  int dimension() const { return n_tri + n_vr + n_obj + n_term; }

  int col_ndg() const { return 0; }
  int col_vr() const { return n_tri; }
  int col_phia() const { return n_tri + n_vr; }
  int col_jt() const { return n_tri + n_vr + n_obj; }

  int row_external() const { return 0; }
  int row_internal() const { return n_tri; }
  int row_charge() const { return n_tri + n_vr; }
  int row_potential() const { return row_charge() + n_charge_rows; }
  int row_kvl() const { return row_potential() + n_potential_rows; }
  int row_kcl() const { return row_kvl() + n_kvl_rows; }
};

AssembledSystem assemble_system(const SurfaceMesh& mesh,
                                const OperatorSet& ops,
                                const ReducedBasis& basis,
                                const ExcitationSpec& spec);

}  // namespace spie
